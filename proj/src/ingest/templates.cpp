// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/ingest/templates.hpp"

#include <nlohmann/json.hpp>

#include "lemmagraph/error.hpp"

namespace lemmagraph::ingest {

using json = nlohmann::json;

std::string_view to_string(InputKind kind) {
  switch (kind) {
    case InputKind::Entity: return "entity";
    case InputKind::EntityType: return "entity_type";
    case InputKind::Relation: return "relation";
    case InputKind::RelationDetail: return "relation_detail";
  }
  return "?";
}

std::optional<InputKind> input_kind_from_string(std::string_view s) {
  for (auto k : {InputKind::Entity, InputKind::EntityType, InputKind::Relation,
                 InputKind::RelationDetail}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::vector<Placeholder> find_placeholders(std::string_view text) {
  std::vector<Placeholder> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    std::size_t j = i + 1;
    std::size_t value = 0;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9' && j - i <= 9) {
      value = value * 10 + static_cast<std::size_t>(text[j] - '0');
      ++j;
    }
    if (j > i + 1 && j < text.size() && text[j] == '}') {
      out.push_back(Placeholder{value, i, j - i + 1});
      i = j;
    }
  }
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& gid, std::size_t index, const std::string& what) {
  std::string where = gid.empty() ? "template #" + std::to_string(index) : "template '" + gid + "'";
  throw Error(ErrorCode::Validation, where + ": " + what, index);
}

std::map<std::string, std::string> string_map(const json& obj, const char* key,
                                              const std::string& gid, std::size_t index) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_object() || it->empty()) {
    bad(gid, index, std::string("'") + key + "' must be a non-empty object");
  }
  std::map<std::string, std::string> out;
  for (const auto& [lang, value] : it->items()) {
    if (!value.is_string()) bad(gid, index, std::string("'") + key + "." + lang + "' must be a string");
    out.emplace(lang, value.get<std::string>());
  }
  return out;
}

void check_arity(const QueryTemplate& t, std::string_view text, std::size_t index) {
  for (const auto& p : find_placeholders(text)) {
    if (p.index >= t.inputs.size()) {
      throw Error(ErrorCode::Arity,
                  "template '" + t.gid + "': placeholder {" + std::to_string(p.index) +
                      "} but only " + std::to_string(t.inputs.size()) + " input(s) declared",
                  index);
    }
  }
}

QueryTemplate parse_template(const json& obj, std::size_t index) {
  if (!obj.is_object()) bad("", index, "expected an object");
  QueryTemplate t;
  auto gid = obj.find("gid");
  if (gid == obj.end()) bad("", index, "missing 'gid'");
  if (gid->is_string()) {
    t.gid = gid->get<std::string>();
  } else if (gid->is_number_integer()) {
    t.gid = gid->dump();
  } else {
    bad("", index, "'gid' must be a string");
  }
  if (t.gid.empty()) bad("", index, "'gid' must be non-empty");

  auto cypher = obj.find("cypher");
  if (cypher == obj.end() || !cypher->is_string() || cypher->get<std::string>().empty()) {
    bad(t.gid, index, "'cypher' must be a non-empty string");
  }
  t.cypher = cypher->get<std::string>();
  t.texts = string_map(obj, "texts", t.gid, index);
  t.groups = string_map(obj, "groups", t.gid, index);

  bool shared_language = false;
  for (const auto& [lang, _] : t.texts) shared_language = shared_language || t.groups.count(lang);
  if (!shared_language) bad(t.gid, index, "'texts' and 'groups' share no language");

  if (auto in = obj.find("input"); in != obj.end()) {
    if (!in->is_array()) bad(t.gid, index, "'input' must be a list");
    for (const auto& item : *in) {
      if (!item.is_object()) bad(t.gid, index, "input entries must be objects");
      TemplateInput input;
      auto id = item.find("id");
      auto type = item.find("type");
      if (id == item.end() || !id->is_string()) bad(t.gid, index, "input 'id' must be a string");
      if (type == item.end() || !type->is_string()) bad(t.gid, index, "input 'type' must be a string");
      input.id = id->get<std::string>();
      auto kind = input_kind_from_string(type->get<std::string>());
      if (!kind) bad(t.gid, index, "unknown input type '" + type->get<std::string>() + "'");
      input.kind = *kind;
      if (auto raw = item.find("raw"); raw != item.end()) {
        if (!raw->is_boolean()) bad(t.gid, index, "input 'raw' must be a boolean");
        input.raw = raw->get<bool>();
      }
      t.inputs.push_back(std::move(input));
    }
  }
  if (auto out = obj.find("output"); out != obj.end()) {
    if (!out->is_array()) bad(t.gid, index, "'output' must be a list");
    for (const auto& name : *out) {
      if (!name.is_string()) bad(t.gid, index, "'output' entries must be strings");
      t.outputs.push_back(name.get<std::string>());
    }
  }

  check_arity(t, t.cypher, index);
  for (const auto& [_, text] : t.texts) check_arity(t, text, index);
  return t;
}

}  // namespace

std::vector<QueryTemplate> parse_templates(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed template JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_array()) throw Error(ErrorCode::Validation, "template file must be a list");
  std::vector<QueryTemplate> out;
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(parse_template(doc[i], i));
  return out;
}

}  // namespace lemmagraph::ingest
