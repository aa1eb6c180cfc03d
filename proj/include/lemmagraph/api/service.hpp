// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lemmagraph/api/router.hpp"
#include "lemmagraph/auth/auth.hpp"
#include "lemmagraph/error.hpp"
#include "lemmagraph/graph/property_graph.hpp"
#include "lemmagraph/ingest/templates.hpp"
#include "lemmagraph/qengine/evaluator.hpp"
#include "lemmagraph/qtemplate/qtemplate.hpp"
#include "lemmagraph/store/store.hpp"

namespace lemmagraph::api {

/// An immutable built graph with its query index.
struct GraphSnapshot {
  explicit GraphSnapshot(graph::PropertyGraph g) : graph(std::move(g)), index(graph) {}
  GraphSnapshot(const GraphSnapshot&) = delete;
  GraphSnapshot& operator=(const GraphSnapshot&) = delete;

  graph::PropertyGraph graph;
  qengine::GraphIndex index;
};

struct ServiceOptions {
  auth::AuthOptions auth;
  graph::BuildPolicy graph_policy;
  std::vector<ingest::QueryTemplate> templates;
  std::int64_t page_size = 50;
  std::size_t result_cache_size = 256;
};

/// Every endpoint of the REST surface over one store, independent of the
/// HTTP transport. Sessions travel as `Authorization: Bearer <token>` or a
/// `session` cookie.
class Service {
 public:
  Service(store::Store& store, ServiceOptions options);

  /// Maps library errors to JSON error responses. Other exceptions escape.
  ApiResponse handle(const ApiRequest& request);

  auth::Authenticator& authenticator() { return auth_; }
  store::Store& store() { return store_; }

  std::shared_ptr<const GraphSnapshot> snapshot() const;
  /// Builds a fresh graph and swaps it in; readers keep the old snapshot.
  std::shared_ptr<const GraphSnapshot> rebuild_graph(const graph::BuildPolicy& policy);

  /// Called after a mutating request succeeded, before its response is
  /// returned. An exception thrown here stands in for a crash at that point.
  std::function<void(const ApiRequest&)> after_commit;

 private:
  void install_routes();
  store::User session_user(const ApiRequest& request);
  store::User require_user(const ApiRequest& request, auth::Permission permission);
  std::shared_ptr<const qtemplate::QueryOutcome> cached_result(std::int64_t id) const;
  std::int64_t cache_result(std::shared_ptr<const qtemplate::QueryOutcome> outcome);

  store::Store& store_;
  ServiceOptions options_;
  auth::Authenticator auth_;
  Router router_;

  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const GraphSnapshot> snapshot_;

  mutable std::mutex cache_mutex_;
  std::int64_t next_result_id_ = 1;
  std::map<std::int64_t, std::shared_ptr<const qtemplate::QueryOutcome>> results_;
};

/// HTTP status for a library error code.
int http_status(ErrorCode code);

}  // namespace lemmagraph::api
