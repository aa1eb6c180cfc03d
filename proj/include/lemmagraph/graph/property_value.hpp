// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace lemmagraph::graph {

/// A property value: boolean, integer, float, string or a list of values.
class PropertyValue {
 public:
  using List = std::vector<PropertyValue>;
  using Storage = std::variant<bool, std::int64_t, double, std::string, List>;

  PropertyValue() : value_(std::string()) {}
  PropertyValue(bool b) : value_(b) {}
  PropertyValue(int i) : value_(static_cast<std::int64_t>(i)) {}
  PropertyValue(std::int64_t i) : value_(i) {}
  PropertyValue(double d) : value_(d) {}
  PropertyValue(const char* s) : value_(std::string(s)) {}
  PropertyValue(std::string s) : value_(std::move(s)) {}
  PropertyValue(List l) : value_(std::move(l)) {}

  const Storage& storage() const { return value_; }

  template <class T>
  bool is() const { return std::holds_alternative<T>(value_); }
  template <class T>
  const T& as() const { return std::get<T>(value_); }

  bool operator==(const PropertyValue&) const = default;

 private:
  Storage value_;
};

using PropertyMap = std::map<std::string, PropertyValue>;

nlohmann::json to_json(const PropertyValue& v);
/// Null JSON values are not representable and are rejected.
PropertyValue property_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PropertyMap& m);
PropertyMap property_map_from_json(const nlohmann::json& j);

}  // namespace lemmagraph::graph
