// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/api/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lemmagraph/error.hpp"

namespace lemmagraph::api {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::Config, field + ": " + what);
}

const json* member(const json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) fail(field, "expected an object");
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string text_field(const json& obj, const char* key, const std::string& prefix, bool required) {
  std::string field = prefix + "." + key;
  const json* v = member(obj, key, prefix);
  if (!v) {
    if (required) fail(field, "missing");
    return {};
  }
  if (!v->is_string()) fail(field, "expected a string");
  return v->get<std::string>();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* strength_name(auth::HashStrength s) {
  return s == auth::HashStrength::Minimal ? "minimal" : "interactive";
}

}  // namespace

Config parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, std::string("settings file is not valid JSON: ") + e.what(),
                static_cast<std::size_t>(e.byte));
  }
  if (!doc.is_object()) fail("settings", "expected an object");

  Config c;
  const json* admin = member(doc, "admin", "settings");
  if (!admin) fail("admin", "missing");
  c.admin.username = text_field(*admin, "username", "admin", true);
  if (c.admin.username.empty()) fail("admin.username", "must not be empty");
  c.admin.password = text_field(*admin, "password", "admin", true);
  if (c.admin.password.empty()) fail("admin.password", "must not be empty");
  c.admin.email = text_field(*admin, "email", "admin", false);

  if (const json* roles = member(doc, "roles", "settings")) {
    if (const json* def = member(*roles, "default", "roles")) {
      if (!def->is_array()) fail("roles.default", "expected a list of role names");
      auth::RoleSet set;
      for (const auto& r : *def) {
        auto role = r.is_string() ? auth::role_from_string(r.get<std::string>()) : std::nullopt;
        if (!role) fail("roles.default", "unknown role " + r.dump());
        set.insert(*role);
      }
      c.default_roles = set;
    }
  }

  if (const json* store = member(doc, "store", "settings")) {
    if (member(*store, "path", "store")) {
      c.store_path = text_field(*store, "path", "store", false);
      if (c.store_path.empty()) fail("store.path", "must not be empty");
    }
  }

  if (const json* server = member(doc, "server", "settings")) {
    if (member(*server, "host", "server")) c.host = text_field(*server, "host", "server", false);
    if (const json* port = member(*server, "port", "server")) {
      if (!port->is_number_integer()) fail("server.port", "expected an integer");
      auto p = port->get<std::int64_t>();
      if (p < 0 || p > 65535) fail("server.port", "out of range");
      c.port = static_cast<int>(p);
    }
  }

  if (const json* session = member(doc, "session", "settings")) {
    if (const json* t = member(*session, "idle_timeout_seconds", "session")) {
      if (!t->is_number_integer() || t->get<std::int64_t>() <= 0) {
        fail("session.idle_timeout_seconds", "expected a positive integer");
      }
      c.idle_timeout = std::chrono::seconds(t->get<std::int64_t>());
    }
  }

  if (const json* g = member(doc, "graph", "settings")) {
    if (const json* states = member(*g, "include_states", "graph")) {
      if (!states->is_array()) fail("graph.include_states", "expected a list");
      c.graph_policy.include_states.clear();
      for (const auto& s : *states) {
        auto state = s.is_string() ? store::curation_state_from_string(s.get<std::string>())
                                   : std::nullopt;
        if (!state) fail("graph.include_states", "unknown state " + s.dump());
        c.graph_policy.include_states.insert(*state);
      }
      if (c.graph_policy.include_states.empty()) fail("graph.include_states", "must not be empty");
    }
    if (const json* corpora = member(*g, "corpora", "graph")) {
      if (!corpora->is_array()) fail("graph.corpora", "expected a list of corpus ids");
      for (const auto& id : *corpora) {
        if (!id.is_number_integer()) fail("graph.corpora", "expected a list of corpus ids");
        c.graph_policy.corpora.insert(store::CorpusId{id.get<std::int64_t>()});
      }
    }
  }

  if (const json* t = member(doc, "templates", "settings")) {
    if (member(*t, "path", "templates")) {
      c.templates_path = text_field(*t, "path", "templates", false);
    }
  }

  if (const json* sec = member(doc, "security", "settings")) {
    if (member(*sec, "hash_strength", "security")) {
      auto s = text_field(*sec, "hash_strength", "security", false);
      if (s == "interactive") {
        c.hash_strength = auth::HashStrength::Interactive;
      } else if (s == "minimal") {
        c.hash_strength = auth::HashStrength::Minimal;
      } else {
        fail("security.hash_strength", "expected \"interactive\" or \"minimal\"");
      }
    }
  }
  return c;
}

Config load_config(const std::filesystem::path& path) {
  Config c = parse_config(read_file(path));
  auto base = path.parent_path();
  if (c.store_path.is_relative()) c.store_path = base / c.store_path;
  if (c.templates_path && c.templates_path->is_relative()) *c.templates_path = base / *c.templates_path;
  return c;
}

std::string serialize_config(const Config& c) {
  nlohmann::ordered_json doc;
  doc["admin"] = {{"username", c.admin.username},
                  {"password", c.admin.password},
                  {"email", c.admin.email}};
  doc["roles"]["default"] = c.default_roles.names();
  doc["store"]["path"] = c.store_path.string();
  doc["server"] = {{"host", c.host}, {"port", c.port}};
  doc["session"]["idle_timeout_seconds"] = c.idle_timeout.count();
  auto states = nlohmann::ordered_json::array();
  for (auto s : c.graph_policy.include_states) states.push_back(std::string(store::to_string(s)));
  auto corpora = nlohmann::ordered_json::array();
  for (auto id : c.graph_policy.corpora) corpora.push_back(id.value);
  doc["graph"] = {{"include_states", states}, {"corpora", corpora}};
  doc["templates"]["path"] = c.templates_path ? json(c.templates_path->string()) : json(nullptr);
  doc["security"]["hash_strength"] = strength_name(c.hash_strength);
  return doc.dump(2) + "\n";
}

std::vector<ingest::QueryTemplate> load_templates(const Config& config) {
  if (!config.templates_path) return {};
  return ingest::parse_templates(read_file(*config.templates_path));
}

auth::AuthOptions auth_options(const Config& config) {
  auth::AuthOptions opts;
  opts.idle_timeout = config.idle_timeout;
  opts.strength = config.hash_strength;
  opts.default_roles = config.default_roles;
  return opts;
}

}  // namespace lemmagraph::api
