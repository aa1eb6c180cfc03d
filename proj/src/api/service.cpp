// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/api/service.hpp"

#include <charconv>

#include <nlohmann/json.hpp>
#include <sodium.h>

#include "lemmagraph/annotate/annotate.hpp"
#include "lemmagraph/api/stats.hpp"
#include "lemmagraph/graph/builder.hpp"
#include "lemmagraph/graph/jsonl.hpp"
#include "lemmagraph/ingest/chapter.hpp"

namespace lemmagraph::api {

using json = nlohmann::ordered_json;
using auth::Permission;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation:
    case ErrorCode::Parse:
    case ErrorCode::Syntax:
    case ErrorCode::Semantic:
    case ErrorCode::Evaluation:
    case ErrorCode::Arity:
    case ErrorCode::RejectedInput:
    case ErrorCode::Ontology:
    case ErrorCode::DanglingEdge:
      return 400;
    case ErrorCode::Authentication: return 401;
    case ErrorCode::Authorization: return 403;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Duplicate:
    case ErrorCode::Constraint:
    case ErrorCode::InUse:
      return 409;
    case ErrorCode::TemplateDefinition:
    case ErrorCode::UnrecoverableStore:
    case ErrorCode::Io:
    case ErrorCode::Config:
      return 500;
  }
  return 500;
}

namespace {

ApiResponse json_response(int status, const json& body) {
  ApiResponse r;
  r.status = status;
  r.body = body.dump();
  return r;
}

ApiResponse no_content() {
  ApiResponse r;
  r.status = 204;
  r.content_type.clear();
  return r;
}

json parse_body(const ApiRequest& req, bool allow_empty = false) {
  if (allow_empty && req.body.find_first_not_of(" \t\r\n") == std::string::npos) {
    return json::object();
  }
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("request body is not valid JSON: ") + e.what(),
                e.byte);
  }
  if (!body.is_object()) throw Error(ErrorCode::Validation, "request body must be a JSON object");
  return body;
}

std::string text_field(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::Validation, std::string("field \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_text(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorCode::Validation, std::string("field \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

std::int64_t int_field(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::Validation, std::string("field \"") + key + "\" must be an integer");
  }
  return it->get<std::int64_t>();
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::Validation, what + " must be an integer, got \"" + s + "\"");
  }
  return v;
}

std::int64_t path_id(const PathParams& params, const std::string& name = "id") {
  return parse_int(params.at(name), "path id");
}

std::string fresh_token() {
  unsigned char bytes[16];
  randombytes_buf(bytes, sizeof bytes);
  char hex[sizeof bytes * 2 + 1];
  sodium_bin2hex(hex, sizeof hex, bytes, sizeof bytes);
  return hex;
}

store::OntologyKind ontology_kind(const std::string& s) {
  if (s == "node") return store::OntologyKind::Node;
  if (s == "relation") return store::OntologyKind::Relation;
  throw Error(ErrorCode::NotFound, "unknown ontology kind \"" + s + "\"");
}

json user_json(const store::User& u) {
  return {{"id", u.id.value}, {"username", u.username}, {"email", u.email}, {"roles", u.roles.names()}};
}

json line_json(const store::Line& l, const store::StoreView& view) {
  json j{{"id", l.id.value},
         {"chapter_id", l.chapter_id.value},
         {"verse_id", l.verse_id.value},
         {"ordinal", l.ordinal},
         {"text", l.text}};
  auto verse = view.verse(l.verse_id);
  j["verse"] = verse && verse->verse_mark ? json(*verse->verse_mark) : json(nullptr);
  j["split"] = l.split ? json(*l.split) : json(nullptr);
  return j;
}

std::string lemma_of(const store::StoreView& view, store::LexiconId id) {
  auto e = view.lexicon_entry(id);
  return e ? e->lemma : std::string();
}

json annotation_json(const store::StoreView& view, const store::Annotation& a) {
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        json j{{"id", x.id.value}};
        auto annotator = view.user(x.annotator_id);
        if constexpr (std::is_same_v<T, store::EntityAnnotation>) {
          auto type = view.node_type(x.node_type_id);
          j["kind"] = "entity";
          j["lemma"] = lemma_of(view, x.lexicon_id);
          j["node_type"] = type ? type->label : std::string();
        } else {
          auto type = view.relation_type(x.relation_type_id);
          j["kind"] = "relation";
          j["source"] = lemma_of(view, x.source_lexicon_id);
          j["target"] = lemma_of(view, x.target_lexicon_id);
          j["relation_type"] = type ? type->label : std::string();
          j["detail"] = x.detail ? json(*x.detail) : json(nullptr);
        }
        j["line_id"] = x.line_id.value;
        j["annotator_id"] = x.annotator_id.value;
        j["annotator"] = annotator ? annotator->username : std::string();
        j["state"] = std::string(store::to_string(x.state));
        return j;
      },
      a);
}

graph::BuildPolicy policy_from(const json& body, graph::BuildPolicy policy) {
  if (auto it = body.find("include_states"); it != body.end()) {
    if (!it->is_array()) throw Error(ErrorCode::Validation, "include_states must be a list");
    policy.include_states.clear();
    for (const auto& s : *it) {
      auto state = s.is_string() ? store::curation_state_from_string(s.get<std::string>())
                                 : std::nullopt;
      if (!state) throw Error(ErrorCode::Validation, "unknown curation state " + s.dump());
      policy.include_states.insert(*state);
    }
  }
  if (auto it = body.find("corpora"); it != body.end()) {
    if (!it->is_array()) throw Error(ErrorCode::Validation, "corpora must be a list of ids");
    policy.corpora.clear();
    for (const auto& id : *it) {
      if (!id.is_number_integer()) throw Error(ErrorCode::Validation, "corpora must be a list of ids");
      policy.corpora.insert(store::CorpusId{id.get<std::int64_t>()});
    }
  }
  graph::validate(policy);
  return policy;
}

json template_json(const ingest::QueryTemplate& t) {
  json inputs = json::array();
  for (const auto& in : t.inputs) {
    inputs.push_back({{"id", in.id}, {"type", std::string(ingest::to_string(in.kind))}, {"raw", in.raw}});
  }
  return {{"gid", t.gid},     {"texts", t.texts},   {"groups", t.groups},
          {"cypher", t.cypher}, {"input", inputs}, {"output", t.outputs}};
}

std::optional<std::string> session_token(const ApiRequest& req) {
  if (const auto* h = req.header("authorization")) {
    static const std::string kBearer = "Bearer ";
    if (h->compare(0, kBearer.size(), kBearer) == 0) return h->substr(kBearer.size());
  }
  if (const auto* c = req.header("cookie")) {
    std::size_t i = 0;
    while (i < c->size()) {
      std::size_t end = c->find(';', i);
      if (end == std::string::npos) end = c->size();
      std::string part = c->substr(i, end - i);
      std::size_t start = part.find_first_not_of(' ');
      if (start != std::string::npos && part.compare(start, 8, "session=") == 0) {
        return part.substr(start + 8);
      }
      i = end + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

Service::Service(store::Store& store, ServiceOptions options)
    : store_(store), options_(std::move(options)), auth_(store, options_.auth) {
  if (sodium_init() < 0) throw Error(ErrorCode::Io, "libsodium failed to initialize");
  if (options_.page_size <= 0) throw Error(ErrorCode::Config, "page size must be positive");
  rebuild_graph(options_.graph_policy);
  install_routes();
}

std::shared_ptr<const GraphSnapshot> Service::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

std::shared_ptr<const GraphSnapshot> Service::rebuild_graph(const graph::BuildPolicy& policy) {
  auto fresh = std::make_shared<const GraphSnapshot>(graph::build_graph(store_, policy));
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = fresh;
  return fresh;
}

std::shared_ptr<const qtemplate::QueryOutcome> Service::cached_result(std::int64_t id) const {
  std::lock_guard lock(cache_mutex_);
  auto it = results_.find(id);
  if (it == results_.end()) {
    throw Error(ErrorCode::NotFound, "query result " + std::to_string(id) + " is not available");
  }
  return it->second;
}

std::int64_t Service::cache_result(std::shared_ptr<const qtemplate::QueryOutcome> outcome) {
  std::lock_guard lock(cache_mutex_);
  std::int64_t id = next_result_id_++;
  results_.emplace(id, std::move(outcome));
  while (results_.size() > options_.result_cache_size) results_.erase(results_.begin());
  return id;
}

store::User Service::session_user(const ApiRequest& req) {
  auto token = session_token(req);
  if (!token) throw Error(ErrorCode::Authentication, "no session");
  auto user = auth_.session_user(*token);
  if (!user) throw Error(ErrorCode::Authentication, "session expired or unknown");
  return *user;
}

store::User Service::require_user(const ApiRequest& req, Permission permission) {
  store::User user = session_user(req);
  auth::require(user, permission);
  return user;
}

ApiResponse Service::handle(const ApiRequest& request) {
  ApiResponse response;
  try {
    response = router_.dispatch(request);
  } catch (const Error& e) {
    std::optional<std::int64_t> pos;
    if (e.position()) pos = static_cast<std::int64_t>(*e.position());
    return error_response(http_status(e.code()), std::string(to_string(e.code())), e.what(), pos);
  } catch (const nlohmann::json::exception& e) {
    return error_response(400, "validation", e.what());
  }
  if (request.method != "GET" && response.status < 400 && after_commit) after_commit(request);
  return response;
}

void Service::install_routes() {
  Router& r = router_;

  r.add("POST", "/api/register", [this](const ApiRequest& req, const PathParams&) {
    json body = parse_body(req);
    auto id = auth_.register_user(text_field(body, "username"),
                                  optional_text(body, "email").value_or(""),
                                  text_field(body, "password"));
    auto user = store_.read([&](const store::StoreView& v) { return v.user(id); });
    return json_response(201, user_json(*user));
  });

  r.add("POST", "/api/login", [this](const ApiRequest& req, const PathParams&) {
    json body = parse_body(req);
    auto token = auth_.authenticate(text_field(body, "username"), text_field(body, "password"));
    if (!token) throw Error(ErrorCode::Authentication, "invalid username or password");
    auto user = auth_.session_user(*token);
    ApiResponse resp = json_response(200, {{"token", *token}, {"user", user_json(*user)}});
    resp.headers["Set-Cookie"] = "session=" + *token + "; HttpOnly; Path=/; SameSite=Strict";
    return resp;
  });

  r.add("POST", "/api/logout", [this](const ApiRequest& req, const PathParams&) {
    if (auto token = session_token(req)) auth_.logout(*token);
    ApiResponse resp = no_content();
    resp.headers["Set-Cookie"] = "session=; HttpOnly; Path=/; Max-Age=0";
    return resp;
  });

  r.add("GET", "/api/me", [this](const ApiRequest& req, const PathParams&) {
    store::User user = session_user(req);
    auto [entities, relations] =
        store_.read([&](const store::StoreView& v) { return v.annotation_counts_by(user.id); });
    json j = user_json(user);
    j["annotations"] = {{"entity", entities}, {"relation", relations}};
    return json_response(200, j);
  });

  r.add("GET", "/api/users", [this](const ApiRequest& req, const PathParams&) {
    require_user(req, Permission::ManageAccess);
    json list = json::array();
    for (const auto& u : store_.read([](const store::StoreView& v) { return v.users(); })) {
      list.push_back(user_json(u));
    }
    return json_response(200, list);
  });

  r.add("PATCH", "/api/users/{id}/roles", [this](const ApiRequest& req, const PathParams& p) {
    store::User actor = require_user(req, Permission::ManageAccess);
    json body = parse_body(req);
    auto it = body.find("roles");
    if (it == body.end() || !it->is_array()) {
      throw Error(ErrorCode::Validation, "field \"roles\" must be a list of role names");
    }
    auth::RoleSet roles;
    for (const auto& name : *it) {
      auto role = name.is_string() ? auth::role_from_string(name.get<std::string>()) : std::nullopt;
      if (!role) throw Error(ErrorCode::Validation, "unknown role " + name.dump());
      roles.insert(*role);
    }
    store::UserId target{path_id(p)};
    auto granted = auth_.grant_roles(actor, target, roles);
    return json_response(200, {{"id", target.value}, {"roles", granted.names()}});
  });

  r.add("GET", "/api/corpora", [this](const ApiRequest& req, const PathParams&) {
    require_user(req, Permission::ViewCorpus);
    json list = store_.read([](const store::StoreView& v) {
      json out = json::array();
      for (const auto& c : v.corpora()) {
        json chapters = json::array();
        for (const auto& ch : v.chapters(c.id)) chapters.push_back({{"id", ch.id.value}, {"name", ch.name}});
        out.push_back({{"id", c.id.value},
                       {"name", c.name},
                       {"description", c.description},
                       {"lines", v.line_count(c.id)},
                       {"chapters", chapters}});
      }
      return out;
    });
    return json_response(200, list);
  });

  r.add("POST", "/api/corpora", [this](const ApiRequest& req, const PathParams&) {
    require_user(req, Permission::UploadCorpus);
    json body = parse_body(req);
    std::string name = text_field(body, "name");
    std::string description = optional_text(body, "description").value_or("");
    if (name.empty()) throw Error(ErrorCode::Validation, "corpus name must not be empty");
    auto id = store_.transact([&](store::Transaction& tx) {
      if (tx.corpus_by_name(name)) throw Error(ErrorCode::Duplicate, "corpus \"" + name + "\" exists");
      return tx.insert_corpus(name, description);
    });
    return json_response(201, {{"id", id.value}, {"name", name}, {"description", description}});
  });

  r.add("POST", "/api/corpora/{id}/chapters", [this](const ApiRequest& req, const PathParams& p) {
    require_user(req, Permission::UploadCorpus);
    store::CorpusId corpus{path_id(p)};
    const std::string* name = req.param("name");
    if (!name || name->empty()) throw Error(ErrorCode::Validation, "query parameter \"name\" is required");
    auto exists = store_.read([&](const store::StoreView& v) { return v.corpus(corpus).has_value(); });
    if (!exists) throw Error(ErrorCode::NotFound, "corpus " + std::to_string(corpus.value) + " not found");
    auto file = ingest::parse_chapter(req.body);
    auto summary = ingest::ingest_chapter(store_, corpus, *name, file);
    return json_response(201, {{"chapter_id", summary.chapter_id.value},
                               {"verses", summary.verses},
                               {"lines", summary.lines},
                               {"tokens", summary.tokens}});
  });

  r.add("GET", "/api/corpora/{id}/lines", [this](const ApiRequest& req, const PathParams& p) {
    require_user(req, Permission::ViewCorpus);
    store::CorpusId corpus{path_id(p)};
    std::int64_t page = 1;
    if (const auto* s = req.param("page")) page = parse_int(*s, "page");
    if (page < 1) throw Error(ErrorCode::Validation, "page must be at least 1");
    std::int64_t size = options_.page_size;
    json out = store_.read([&](const store::StoreView& v) {
      if (!v.corpus(corpus)) {
        throw Error(ErrorCode::NotFound, "corpus " + std::to_string(corpus.value) + " not found");
      }
      json lines = json::array();
      for (const auto& l : v.lines(corpus, (page - 1) * size, size)) lines.push_back(line_json(l, v));
      return json{{"page", page}, {"page_size", size}, {"total", v.line_count(corpus)}, {"lines", lines}};
    });
    return json_response(200, out);
  });

  r.add("GET", "/api/lines/{id}", [this](const ApiRequest& req, const PathParams& p) {
    require_user(req, Permission::ViewCorpus);
    store::LineId id{path_id(p)};
    json out = store_.read([&](const store::StoreView& v) {
      auto line = v.line(id);
      if (!line) throw Error(ErrorCode::NotFound, "line " + std::to_string(id.value) + " not found");
      json j = line_json(*line, v);
      json tokens = json::array();
      for (const auto& t : v.tokens(id)) {
        json attrs = json::object();
        for (const auto& [k, val] : t.attributes) attrs[k] = val;
        tokens.push_back(attrs);
      }
      j["analysis"] = {{"source", line->analysis_source ? json(*line->analysis_source) : json(nullptr)},
                       {"text", line->analysis_text ? json(*line->analysis_text) : json(nullptr)},
                       {"tokens", tokens}};
      return j;
    });
    return json_response(200, out);
  });

  r.add("GET", "/api/ontology/{kind}", [this](const ApiRequest& req, const PathParams& p) {
    require_user(req, Permission::ViewCorpus);
    auto kind = ontology_kind(p.at("kind"));
    json out = store_.read([&](const store::StoreView& v) {
      json list = json::array();
      auto add = [&](std::int64_t id, const std::string& label, const std::optional<std::string>& d,
                     std::int64_t usage) {
        list.push_back({{"id", id}, {"label", label}, {"description", d ? json(*d) : json(nullptr)},
                        {"usage", usage}});
      };
      if (kind == store::OntologyKind::Node) {
        for (const auto& t : v.node_types()) add(t.id.value, t.label, t.description, v.node_type_usage(t.id));
      } else {
        for (const auto& t : v.relation_types()) {
          add(t.id.value, t.label, t.description, v.relation_type_usage(t.id));
        }
      }
      return list;
    });
    return json_response(200, out);
  });

  r.add("POST", "/api/ontology/{kind}", [this](const ApiRequest& req, const PathParams& p) {
    store::User user = require_user(req, Permission::CreateOntology);
    auto kind = ontology_kind(p.at("kind"));
    json body = parse_body(req);
    std::string label = text_field(body, "label");
    auto id = annotate::ontology_add(store_, user, kind, label, optional_text(body, "description"));
    return json_response(201, {{"id", id}, {"label", label}});
  });

  r.add("DELETE", "/api/ontology/{kind}", [this](const ApiRequest& req, const PathParams& p) {
    store::User user = require_user(req, Permission::CreateOntology);
    auto kind = ontology_kind(p.at("kind"));
    const std::string* label = req.param("label");
    if (!label || label->empty()) throw Error(ErrorCode::Validation, "query parameter \"label\" is required");
    annotate::ontology_remove(store_, user, kind, *label);
    return no_content();
  });

  r.add("POST", "/api/annotations/entity", [this](const ApiRequest& req, const PathParams&) {
    store::User user = require_user(req, Permission::Annotate);
    json body = parse_body(req);
    annotate::EntityRequest e{optional_text(body, "client_token").value_or(fresh_token()),
                              store::LineId{int_field(body, "line_id")}, text_field(body, "lemma"),
                              text_field(body, "node_type")};
    auto id = annotate::annotate_entity(store_, user, e);
    json out = store_.read([&](const store::StoreView& v) { return annotation_json(v, *v.annotation(id)); });
    out["client_token"] = e.client_token;
    return json_response(200, out);
  });

  r.add("POST", "/api/annotations/relation", [this](const ApiRequest& req, const PathParams&) {
    store::User user = require_user(req, Permission::Annotate);
    json body = parse_body(req);
    annotate::RelationRequest rel{optional_text(body, "client_token").value_or(fresh_token()),
                                  store::LineId{int_field(body, "line_id")},
                                  text_field(body, "source"),
                                  text_field(body, "target"),
                                  text_field(body, "relation_type"),
                                  optional_text(body, "detail")};
    auto id = annotate::annotate_relation(store_, user, rel);
    json out = store_.read([&](const store::StoreView& v) { return annotation_json(v, *v.annotation(id)); });
    out["client_token"] = rel.client_token;
    return json_response(200, out);
  });

  r.add("GET", "/api/lines/{id}/annotations", [this](const ApiRequest& req, const PathParams& p) {
    auto scope = annotate::Scope::Own;
    if (const auto* s = req.param("scope")) {
      if (*s == "all") {
        scope = annotate::Scope::All;
      } else if (*s != "own") {
        throw Error(ErrorCode::Validation, "scope must be \"own\" or \"all\"");
      }
    }
    store::User user =
        require_user(req, scope == annotate::Scope::All ? Permission::Curate : Permission::Annotate);
    auto list = annotate::list_annotations(store_, user, store::LineId{path_id(p)}, scope);
    json out = store_.read([&](const store::StoreView& v) {
      json arr = json::array();
      for (const auto& a : list) arr.push_back(annotation_json(v, a));
      return arr;
    });
    return json_response(200, out);
  });

  r.add("DELETE", "/api/annotations/{id}", [this](const ApiRequest& req, const PathParams& p) {
    store::User user = require_user(req, Permission::Annotate);
    annotate::delete_annotation(store_, user, store::AnnotationId{path_id(p)});
    return no_content();
  });

  r.add("PATCH", "/api/annotations/{id}/curation", [this](const ApiRequest& req, const PathParams& p) {
    store::User user = require_user(req, Permission::Curate);
    json body = parse_body(req);
    std::string decision = text_field(body, "decision");
    annotate::Decision d;
    if (decision == "keep") {
      d = annotate::Decision::Keep;
    } else if (decision == "discard") {
      d = annotate::Decision::Discard;
    } else {
      throw Error(ErrorCode::Validation, "decision must be \"keep\" or \"discard\"");
    }
    store::AnnotationId id{path_id(p)};
    auto state = annotate::curate(store_, user, id, d);
    return json_response(200, {{"id", id.value}, {"state", std::string(store::to_string(state))}});
  });

  r.add("GET", "/api/suggest", [this](const ApiRequest& req, const PathParams&) {
    require_user(req, Permission::Annotate);
    const std::string* line = req.param("line");
    if (!line) throw Error(ErrorCode::Validation, "query parameter \"line\" is required");
    std::int64_t limit = 10;
    if (const auto* l = req.param("limit")) limit = parse_int(*l, "limit");
    if (limit <= 0) throw Error(ErrorCode::Validation, "limit must be positive");
    const std::string* prefix = req.param("prefix");
    auto list = annotate::suggest(store_, store::LineId{parse_int(*line, "line")},
                                  prefix ? *prefix : std::string(), static_cast<std::size_t>(limit));
    json out = json::array();
    for (const auto& s : list) {
      out.push_back({{"lemma", s.lemma},
                     {"source", s.source == annotate::SuggestionSource::CurrentLine ? "line" : "history"},
                     {"weight", s.weight}});
    }
    return json_response(200, out);
  });

  r.add("POST", "/api/graph/build", [this](const ApiRequest& req, const PathParams&) {
    require_user(req, Permission::UploadCorpus);
    json body = parse_body(req, true);
    auto snap = rebuild_graph(policy_from(body, options_.graph_policy));
    return json_response(200, {{"nodes", snap->graph.node_count()}, {"edges", snap->graph.edge_count()}});
  });

  r.add("GET", "/api/graph/export.jsonl", [this](const ApiRequest& req, const PathParams&) {
    require_user(req, Permission::UploadCorpus);
    ApiResponse resp;
    resp.body = graph::export_jsonl(snapshot()->graph);
    resp.content_type = "application/x-ndjson";
    return resp;
  });

  r.add("GET", "/api/templates", [this](const ApiRequest& req, const PathParams&) {
    require_user(req, Permission::Query);
    json list = json::array();
    for (const auto& t : options_.templates) list.push_back(template_json(t));
    return json_response(200, list);
  });

  r.add("POST", "/api/query", [this](const ApiRequest& req, const PathParams&) {
    require_user(req, Permission::Query);
    json body = parse_body(req);
    auto snap = snapshot();
    auto outcome = std::make_shared<qtemplate::QueryOutcome>();
    auto gid = body.find("template_gid");
    if (gid != body.end() && !gid->is_null()) {
      std::string key = gid->is_string() ? gid->get<std::string>() : gid->dump();
      auto it = std::find_if(options_.templates.begin(), options_.templates.end(),
                             [&](const ingest::QueryTemplate& t) { return t.gid == key; });
      if (it == options_.templates.end()) throw Error(ErrorCode::NotFound, "template " + key + " not found");
      std::vector<std::string> inputs;
      if (auto in = body.find("inputs"); in != body.end()) {
        if (!in->is_array()) throw Error(ErrorCode::Validation, "field \"inputs\" must be a list");
        for (const auto& v : *in) {
          if (!v.is_string()) throw Error(ErrorCode::Validation, "inputs must be strings");
          inputs.push_back(v.get<std::string>());
        }
      }
      auto language = optional_text(body, "language");
      if (!language && !it->texts.empty()) language = it->texts.begin()->first;
      *outcome = qtemplate::run(snap->index, *it, language.value_or(""), inputs);
    } else {
      *outcome = qtemplate::run_query(snap->index, text_field(body, "query_text"));
    }
    json out{{"id", 0}};
    out["question"] = outcome->instance ? json(outcome->instance->question) : json(nullptr);
    out["query"] = outcome->query;
    json result = qtemplate::result_json(*outcome);
    for (auto& [k, v] : result.items()) out[k] = v;
    out["id"] = cache_result(outcome);
    return json_response(200, out);
  });

  r.add("GET", "/api/query/{id}/export", [this](const ApiRequest& req, const PathParams& p) {
    require_user(req, Permission::Query);
    std::string name = req.param("format") ? *req.param("format") : "csv";
    auto format = qtemplate::export_format_from_string(name);
    if (!format) throw Error(ErrorCode::Validation, "unknown export format \"" + name + "\"");
    auto outcome = cached_result(path_id(p));
    ApiResponse resp;
    resp.body = qtemplate::export_result(*outcome, *format);
    resp.content_type = std::string(qtemplate::content_type(*format));
    std::string ext = *format == qtemplate::ExportFormat::Text ? "txt" : std::string(qtemplate::to_string(*format));
    resp.headers["Content-Disposition"] = "attachment; filename=\"result-" + p.at("id") + "." + ext + "\"";
    return resp;
  });

  r.add("GET", "/api/stats", [this](const ApiRequest& req, const PathParams&) {
    require_user(req, Permission::ViewCorpus);
    return json_response(200, to_json(compute_stats(store_)));
  });
}

}  // namespace lemmagraph::api
