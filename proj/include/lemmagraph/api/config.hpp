// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lemmagraph/auth/auth.hpp"
#include "lemmagraph/graph/property_graph.hpp"
#include "lemmagraph/ingest/templates.hpp"

namespace lemmagraph::api {

struct AdminAccount {
  std::string username;
  std::string password;
  std::string email;

  bool operator==(const AdminAccount&) const = default;
};

/// Settings file contents. Every field except the admin account has a default.
struct Config {
  AdminAccount admin;
  auth::RoleSet default_roles = auth::kDefaultRoles;
  std::filesystem::path store_path = "lemmagraph.db";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::chrono::seconds idle_timeout{3600};
  graph::BuildPolicy graph_policy;
  std::optional<std::filesystem::path> templates_path;
  auth::HashStrength hash_strength = auth::HashStrength::Interactive;

  bool operator==(const Config&) const = default;
};

/// Parses a JSON settings document. Relative paths are kept as written.
/// Throws Error(Config) naming the offending field, e.g. `admin.username`.
Config parse_config(std::string_view text);

/// Reads and parses a settings file; Error(Io) when it cannot be read.
/// Relative store and template paths resolve against the file's directory.
Config load_config(const std::filesystem::path& path);

/// Full settings document with every field spelled out.
std::string serialize_config(const Config& config);

/// Templates named by the config, or none when no path is set.
std::vector<ingest::QueryTemplate> load_templates(const Config& config);

auth::AuthOptions auth_options(const Config& config);

}  // namespace lemmagraph::api
