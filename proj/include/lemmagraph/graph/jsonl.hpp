// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "lemmagraph/graph/property_graph.hpp"

namespace lemmagraph::graph {

/// One JSON object per line: every node (sorted by id) precedes every edge
/// (sorted by id).
///
///   {"kind":"node","id":...,"labels":[...],"properties":{...}}
///   {"kind":"edge","id":...,"type":...,"source":...,"target":...,"properties":{...}}
std::string export_jsonl(const PropertyGraph& graph);

/// Inverse of export_jsonl. Blank lines are skipped. An edge whose endpoint
/// has not been declared on an earlier line fails with DanglingEdge; errors
/// carry the 1-based line number as their position.
PropertyGraph import_jsonl(std::string_view bytes);

}  // namespace lemmagraph::graph
