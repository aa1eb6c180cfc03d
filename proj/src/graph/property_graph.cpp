// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/graph/property_graph.hpp"

#include "lemmagraph/error.hpp"

namespace lemmagraph::graph {

void PropertyGraph::add_node(Node node) {
  if (node.id.empty()) throw Error(ErrorCode::Validation, "node id must be non-empty");
  if (node.labels.empty()) {
    throw Error(ErrorCode::Validation, "node '" + node.id + "' must carry at least one label");
  }
  auto id = node.id;
  if (!nodes_.emplace(id, std::move(node)).second) {
    throw Error(ErrorCode::Validation, "duplicate node id '" + id + "'");
  }
}

void PropertyGraph::add_edge(Edge edge) {
  if (edge.id.empty()) throw Error(ErrorCode::Validation, "edge id must be non-empty");
  for (const auto* end : {&edge.source, &edge.target}) {
    if (!nodes_.count(*end)) {
      throw Error(ErrorCode::DanglingEdge,
                  "edge '" + edge.id + "' references missing node '" + *end + "'");
    }
  }
  auto id = edge.id;
  if (!edges_.emplace(id, std::move(edge)).second) {
    throw Error(ErrorCode::Validation, "duplicate edge id '" + id + "'");
  }
}

const Node* PropertyGraph::node(const std::string& id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const Edge* PropertyGraph::edge(const std::string& id) const {
  auto it = edges_.find(id);
  return it == edges_.end() ? nullptr : &it->second;
}

PropertyGraph PropertyGraph::subgraph(const std::set<std::string>& node_ids,
                                      const std::set<std::string>& edge_ids) const {
  std::set<std::string> keep_nodes = node_ids;
  for (const auto& id : edge_ids) {
    if (const Edge* e = edge(id)) {
      keep_nodes.insert(e->source);
      keep_nodes.insert(e->target);
    }
  }
  PropertyGraph out;
  for (const auto& id : keep_nodes) {
    if (const Node* n = node(id)) out.add_node(*n);
  }
  for (const auto& id : edge_ids) {
    if (const Edge* e = edge(id)) out.add_edge(*e);
  }
  return out;
}

}  // namespace lemmagraph::graph
