// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "lemmagraph/graph/property_value.hpp"
#include "lemmagraph/store/types.hpp"

namespace lemmagraph::graph {

struct Node {
  std::string id;
  std::set<std::string> labels;
  PropertyMap properties;

  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string id;
  std::string type;
  std::string source;
  std::string target;
  PropertyMap properties;

  bool operator==(const Edge&) const = default;
};

/// Which annotations feed a graph build.
struct BuildPolicy {
  std::set<store::CurationState> include_states{store::CurationState::Proposed,
                                                store::CurationState::Kept};
  std::set<store::CorpusId> corpora;  // empty selects every corpus

  bool operator==(const BuildPolicy&) const = default;
};

/// Directed multigraph with labeled nodes and typed edges. Every edge's
/// endpoints are nodes of the same graph.
class PropertyGraph {
 public:
  /// Throws Validation on a duplicate id or an empty label set.
  void add_node(Node node);
  /// Throws DanglingEdge when an endpoint is missing, Validation on a duplicate id.
  void add_edge(Edge edge);

  const std::map<std::string, Node>& nodes() const { return nodes_; }
  const std::map<std::string, Edge>& edges() const { return edges_; }
  const Node* node(const std::string& id) const;
  const Edge* edge(const std::string& id) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Copies the given elements plus the endpoints of the given edges.
  PropertyGraph subgraph(const std::set<std::string>& node_ids,
                         const std::set<std::string>& edge_ids) const;

  std::optional<std::chrono::system_clock::time_point> built_at;
  std::optional<BuildPolicy> policy;

  /// Equality of nodes and edges; build metadata is ignored.
  bool operator==(const PropertyGraph& other) const {
    return nodes_ == other.nodes_ && edges_ == other.edges_;
  }

 private:
  std::map<std::string, Node> nodes_;
  std::map<std::string, Edge> edges_;
};

}  // namespace lemmagraph::graph
