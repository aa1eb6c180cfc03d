// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/graph/builder.hpp"

#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>

#include "lemmagraph/error.hpp"

namespace lemmagraph::graph {

void validate(const BuildPolicy& policy) {
  if (policy.include_states.empty()) {
    throw Error(ErrorCode::Validation, "build policy must include at least one curation state");
  }
  if (policy.include_states.count(store::CurationState::Discarded)) {
    throw Error(ErrorCode::Validation, "discarded annotations can never be included in a graph");
  }
}

namespace {

struct NodeAccumulator {
  std::set<std::string> labels;
  std::set<std::int64_t> line_ids;
  std::set<std::int64_t> annotators;
};

using EdgeKey = std::tuple<std::string, std::string, std::string, std::optional<std::string>>;

PropertyValue id_list(const std::set<std::int64_t>& ids) {
  PropertyValue::List list;
  for (auto id : ids) list.emplace_back(id);
  return list;
}

}  // namespace

PropertyGraph build_graph(const store::Store& store, const BuildPolicy& policy) {
  validate(policy);
  store::AnnotationFilter filter{policy.include_states, policy.corpora};

  std::map<std::string, NodeAccumulator> nodes;
  std::map<EdgeKey, std::set<std::int64_t>> edges;

  store.read([&](const store::StoreView& v) {
    std::unordered_map<store::LexiconId, std::string> lemmas;
    for (auto& e : v.lexicon()) lemmas.emplace(e.id, std::move(e.lemma));
    std::unordered_map<store::NodeTypeId, std::string> node_types;
    for (auto& t : v.node_types()) node_types.emplace(t.id, std::move(t.label));
    std::unordered_map<store::RelationTypeId, std::string> relation_types;
    for (auto& t : v.relation_types()) relation_types.emplace(t.id, std::move(t.label));

    for (const auto& a : v.entity_annotations(filter)) {
      auto& acc = nodes[lemmas.at(a.lexicon_id)];
      acc.labels.insert(node_types.at(a.node_type_id));
      acc.line_ids.insert(a.line_id.value);
      acc.annotators.insert(a.annotator_id.value);
    }
    for (const auto& a : v.relation_annotations(filter)) {
      EdgeKey key{lemmas.at(a.source_lexicon_id), lemmas.at(a.target_lexicon_id),
                  relation_types.at(a.relation_type_id), a.detail};
      edges[key].insert(a.line_id.value);
    }
  });

  for (const auto& [key, _] : edges) {
    nodes.try_emplace(std::get<0>(key));
    nodes.try_emplace(std::get<1>(key));
  }

  PropertyGraph g;
  for (auto& [lemma, acc] : nodes) {
    Node n{lemma, std::move(acc.labels), {}};
    if (n.labels.empty()) n.labels.insert(std::string(kUntypedLabel));
    n.properties["lemma"] = lemma;
    n.properties["line_ids"] = id_list(acc.line_ids);
    n.properties["annotator_count"] = static_cast<std::int64_t>(acc.annotators.size());
    g.add_node(std::move(n));
  }
  std::size_t next = 1;
  for (const auto& [key, line_ids] : edges) {
    const auto& [source, target, type, detail] = key;
    Edge e{"e" + std::to_string(next++), type, source, target, {}};
    if (detail) e.properties["detail"] = *detail;
    e.properties["line_ids"] = id_list(line_ids);
    g.add_edge(std::move(e));
  }
  g.built_at = std::chrono::system_clock::now();
  g.policy = policy;
  return g;
}

}  // namespace lemmagraph::graph
