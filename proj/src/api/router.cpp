// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/api/router.hpp"

#include <nlohmann/json.hpp>

namespace lemmagraph::api {

const std::string* ApiRequest::header(const std::string& name) const {
  auto it = headers.find(name);
  return it == headers.end() ? nullptr : &it->second;
}

const std::string* ApiRequest::param(const std::string& name) const {
  auto it = query.find(name);
  return it == query.end() ? nullptr : &it->second;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    std::size_t j = path.find('/', i);
    if (j == std::string::npos) j = path.size();
    if (j > i) out.push_back(path.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

void Router::add(std::string method, const std::string& pattern, Handler handler) {
  routes_.push_back({std::move(method), split_path(pattern), std::move(handler)});
}

ApiResponse Router::dispatch(const ApiRequest& request) const {
  auto segments = split_path(request.path);
  bool path_known = false;
  for (const auto& route : routes_) {
    if (route.segments.size() != segments.size()) continue;
    PathParams params;
    bool ok = true;
    for (std::size_t i = 0; i < segments.size() && ok; ++i) {
      const auto& s = route.segments[i];
      if (s.size() > 2 && s.front() == '{' && s.back() == '}') {
        params[s.substr(1, s.size() - 2)] = segments[i];
      } else {
        ok = s == segments[i];
      }
    }
    if (!ok) continue;
    path_known = true;
    if (route.method == request.method) return route.handler(request, params);
  }
  if (path_known) {
    return error_response(405, "method_not_allowed", request.method + " " + request.path);
  }
  return error_response(404, "not_found", "no route for " + request.path);
}

ApiResponse error_response(int status, const std::string& code, const std::string& message,
                           std::optional<std::int64_t> position) {
  nlohmann::ordered_json body{{"code", code}, {"message", message}};
  if (position) body["position"] = *position;
  ApiResponse r;
  r.status = status;
  r.body = body.dump();
  return r;
}

}  // namespace lemmagraph::api
