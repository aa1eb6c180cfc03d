// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/graph/property_value.hpp"

#include "lemmagraph/error.hpp"

namespace lemmagraph::graph {

nlohmann::json to_json(const PropertyValue& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PropertyValue::List>) {
          nlohmann::json arr = nlohmann::json::array();
          for (const auto& item : x) arr.push_back(to_json(item));
          return arr;
        } else {
          return x;
        }
      },
      v.storage());
}

PropertyValue property_from_json(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::boolean: return j.get<bool>();
    case nlohmann::json::value_t::number_integer: return j.get<std::int64_t>();
    case nlohmann::json::value_t::number_unsigned: return static_cast<std::int64_t>(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: return j.get<double>();
    case nlohmann::json::value_t::string: return j.get<std::string>();
    case nlohmann::json::value_t::array: {
      PropertyValue::List list;
      for (const auto& item : j) list.push_back(property_from_json(item));
      return list;
    }
    default:
      throw Error(ErrorCode::Validation, "unsupported property value: " + j.dump());
  }
}

nlohmann::json to_json(const PropertyMap& m) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [k, v] : m) obj[k] = to_json(v);
  return obj;
}

PropertyMap property_map_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Validation, "properties must be an object");
  PropertyMap out;
  for (const auto& [k, v] : j.items()) out.emplace(k, property_from_json(v));
  return out;
}

}  // namespace lemmagraph::graph
