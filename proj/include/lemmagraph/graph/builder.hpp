// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "lemmagraph/graph/property_graph.hpp"
#include "lemmagraph/store/store.hpp"

namespace lemmagraph::graph {

/// Label given to nodes whose lemma appears only as a relation endpoint.
inline constexpr std::string_view kUntypedLabel = "UNTYPED";

/// Throws Validation for an empty state set or one that includes `discarded`.
void validate(const BuildPolicy& policy);

/// Builds the knowledge graph from the annotations selected by `policy`.
///
/// Nodes are merged by lemma: one node per distinct lemma, labeled with the
/// union of the entity types it was annotated with. Each distinct
/// (source, target, relation type, detail) becomes one edge whose `line_ids`
/// collect every supporting line. Node ids are the lemmas themselves; edge ids
/// are assigned in sorted edge-key order, so the result does not depend on
/// the order in which annotations were made.
PropertyGraph build_graph(const store::Store& store, const BuildPolicy& policy = {});

}  // namespace lemmagraph::graph
