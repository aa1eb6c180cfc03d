// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lemmagraph/store/store.hpp"

namespace lemmagraph::api {

struct CorpusStats {
  store::CorpusId id;
  std::string name;
  store::CorpusCounts counts;
};

/// Annotation volume per corpus plus ontology sizes, read from the live store.
struct Stats {
  std::vector<CorpusStats> corpora;
  std::int64_t node_types = 0;
  std::int64_t relation_types = 0;
};

Stats compute_stats(const store::Store& store);

nlohmann::ordered_json to_json(const Stats& stats);

}  // namespace lemmagraph::api
