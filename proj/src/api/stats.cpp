// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/api/stats.hpp"

namespace lemmagraph::api {

Stats compute_stats(const store::Store& store) {
  return store.read([](const store::StoreView& view) {
    Stats s;
    for (const auto& corpus : view.corpora()) {
      s.corpora.push_back({corpus.id, corpus.name, view.corpus_counts(corpus.id)});
    }
    s.node_types = static_cast<std::int64_t>(view.node_types().size());
    s.relation_types = static_cast<std::int64_t>(view.relation_types().size());
    return s;
  });
}

nlohmann::ordered_json to_json(const Stats& stats) {
  auto corpora = nlohmann::ordered_json::array();
  for (const auto& c : stats.corpora) {
    corpora.push_back({{"id", c.id.value},
                       {"name", c.name},
                       {"lines", c.counts.lines},
                       {"annotators", c.counts.annotators},
                       {"node_annotations", c.counts.node_annotations},
                       {"relation_annotations", c.counts.relation_annotations}});
  }
  nlohmann::ordered_json out;
  out["corpora"] = std::move(corpora);
  out["ontology"] = {{"node_types", stats.node_types}, {"relation_types", stats.relation_types}};
  return out;
}

}  // namespace lemmagraph::api
