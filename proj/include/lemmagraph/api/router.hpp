// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lemmagraph::api {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;

  const std::string* header(const std::string& name) const;
  const std::string* param(const std::string& name) const;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
  std::map<std::string, std::string> headers;
};

using PathParams = std::map<std::string, std::string>;
using Handler = std::function<ApiResponse(const ApiRequest&, const PathParams&)>;

/// Method + path-pattern dispatch. Patterns are `/`-separated with `{name}`
/// segments capturing one path segment each.
class Router {
 public:
  void add(std::string method, const std::string& pattern, Handler handler);

  /// Runs the matching handler; 404 for unknown paths, 405 for a known path
  /// with another method.
  ApiResponse dispatch(const ApiRequest& request) const;

 private:
  struct Route {
    std::string method;
    std::vector<std::string> segments;
    Handler handler;
  };
  std::vector<Route> routes_;
};

std::vector<std::string> split_path(const std::string& path);

/// JSON error body {"code", "message"[, "position"]}.
ApiResponse error_response(int status, const std::string& code, const std::string& message,
                           std::optional<std::int64_t> position = std::nullopt);

}  // namespace lemmagraph::api
