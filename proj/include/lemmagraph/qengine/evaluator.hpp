// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "lemmagraph/graph/property_graph.hpp"
#include "lemmagraph/qengine/ast.hpp"

namespace lemmagraph::qengine {

/// A bound graph element.
struct ElementRef {
  VariableKind kind = VariableKind::Node;
  std::string id;

  auto operator<=>(const ElementRef&) const = default;
};

struct Subgraph {
  std::set<std::string> nodes;
  std::set<std::string> edges;

  bool operator==(const Subgraph&) const = default;
};

using Row = std::vector<ElementRef>;

/// Distinct rows over `columns`, sorted by the ids they bind, plus the
/// elements those rows touch (edge endpoints included).
struct ResultSet {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  Subgraph subgraph;

  bool operator==(const ResultSet&) const = default;
};

/// Adjacency and label partitions over an immutable graph. Build once and
/// reuse across queries against the same snapshot.
class GraphIndex {
 public:
  explicit GraphIndex(const graph::PropertyGraph& graph);

  const graph::PropertyGraph& graph() const { return *graph_; }
  const std::vector<const graph::Node*>& nodes() const { return nodes_; }
  const std::vector<const graph::Edge*>& edges() const { return edges_; }
  const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_[node]; }
  const std::vector<std::size_t>& in_edges(std::size_t node) const { return in_[node]; }
  /// Node indices carrying `label`, in id order; empty for unknown labels.
  const std::vector<std::size_t>& nodes_with_label(const std::string& label) const;
  std::size_t edge_source(std::size_t edge) const { return edge_source_[edge]; }
  std::size_t edge_target(std::size_t edge) const { return edge_target_[edge]; }

 private:
  const graph::PropertyGraph* graph_;
  std::vector<const graph::Node*> nodes_;
  std::vector<const graph::Edge*> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::size_t> edge_source_;
  std::vector<std::size_t> edge_target_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_label_;
};

/// Evaluates a parsed query by backtracking over the pattern atoms, starting
/// from the most selective node scan and extending along adjacency lists.
/// Filter conjuncts are applied as soon as their variables are bound.
///
/// Semantics: every assignment of graph elements to pattern atoms that
/// respects labels, types and directions and satisfies the filter yields a
/// row; rows are projected to the returned columns, de-duplicated and sorted.
/// `=~` is an anchored full-string regular-expression match; a comparison on a
/// missing property is false. Throws Error(Evaluation) on an invalid regex.
ResultSet evaluate(const GraphIndex& index, const QueryAst& ast);
ResultSet evaluate(const graph::PropertyGraph& graph, const QueryAst& ast);

}  // namespace lemmagraph::qengine
