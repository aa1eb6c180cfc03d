// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/graph/jsonl.hpp"

#include <nlohmann/json.hpp>

#include "lemmagraph/error.hpp"

namespace lemmagraph::graph {

using json = nlohmann::json;

std::string export_jsonl(const PropertyGraph& graph) {
  std::string out;
  for (const auto& [id, node] : graph.nodes()) {
    json line = {{"kind", "node"},
                 {"id", id},
                 {"labels", node.labels},
                 {"properties", to_json(node.properties)}};
    out += line.dump();
    out += '\n';
  }
  for (const auto& [id, edge] : graph.edges()) {
    json line = {{"kind", "edge"},          {"id", id},
                 {"type", edge.type},       {"source", edge.source},
                 {"target", edge.target},   {"properties", to_json(edge.properties)}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

namespace {

std::string required_string(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorCode::Validation,
                "line " + std::to_string(line_no) + ": '" + key + "' must be a string", line_no);
  }
  return it->get<std::string>();
}

PropertyMap properties_of(const json& obj, std::size_t line_no) {
  auto it = obj.find("properties");
  if (it == obj.end()) return {};
  try {
    return property_map_from_json(*it);
  } catch (const Error& e) {
    throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what(), line_no);
  }
}

}  // namespace

PropertyGraph import_jsonl(std::string_view bytes) {
  PropertyGraph g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < bytes.size()) {
    std::size_t end = bytes.find('\n', start);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view text = bytes.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (text.find_first_not_of(" \t") == std::string_view::npos) continue;

    json obj;
    try {
      obj = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::Validation, "line " + std::to_string(line_no) + ": expected an object",
                  line_no);
    }
    auto kind = required_string(obj, "kind", line_no);
    try {
      if (kind == "node") {
        Node n{required_string(obj, "id", line_no), {}, properties_of(obj, line_no)};
        auto labels = obj.find("labels");
        if (labels == obj.end() || !labels->is_array()) {
          throw Error(ErrorCode::Validation, "'labels' must be a list");
        }
        for (const auto& l : *labels) {
          if (!l.is_string()) throw Error(ErrorCode::Validation, "labels must be strings");
          n.labels.insert(l.get<std::string>());
        }
        g.add_node(std::move(n));
      } else if (kind == "edge") {
        g.add_edge(Edge{required_string(obj, "id", line_no), required_string(obj, "type", line_no),
                        required_string(obj, "source", line_no),
                        required_string(obj, "target", line_no), properties_of(obj, line_no)});
      } else {
        throw Error(ErrorCode::Validation, "unknown kind '" + kind + "'");
      }
    } catch (const Error& e) {
      if (e.position()) throw;
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return g;
}

}  // namespace lemmagraph::graph
