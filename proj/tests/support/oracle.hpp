// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <vector>

#include "lemmagraph/graph/property_graph.hpp"
#include "lemmagraph/qengine/ast.hpp"

namespace lemmagraph::testing {

/// Reference answer: column names, rows of element ids, and the touched subgraph.
struct OracleResult {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::set<std::string> nodes;
  std::set<std::string> edges;
};

/// Enumerates every assignment of graph elements to pattern atoms, atom by
/// atom in textual order, and keeps those satisfying every atom and the filter.
OracleResult brute_force_oracle(const graph::PropertyGraph& graph, const qengine::QueryAst& ast);

}  // namespace lemmagraph::testing
