// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/annotate/annotate.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "lemmagraph/auth/auth.hpp"
#include "lemmagraph/error.hpp"

namespace lemmagraph::annotate {

using auth::Permission;
using store::Transaction;

namespace {

template <class Expected>
std::optional<store::AnnotationId> replayed(const Transaction& tx, const std::string& token) {
  auto existing = tx.annotation_by_token(token);
  if (!existing) return std::nullopt;
  if (!std::holds_alternative<Expected>(*existing)) {
    throw Error(ErrorCode::Duplicate,
                "client_token '" + token + "' was already used for a different annotation kind");
  }
  return store::annotation_id(*existing);
}

void validate_common(const std::string& token, store::LineId line, const Transaction& tx) {
  if (token.empty()) throw Error(ErrorCode::Validation, "client_token must be non-empty");
  if (!tx.line(line)) {
    throw Error(ErrorCode::NotFound, "no line with id " + std::to_string(line.value));
  }
}

}  // namespace

store::AnnotationId annotate_entity(store::Store& store, const store::User& user,
                                    const EntityRequest& r) {
  auth::require(user, Permission::Annotate);
  if (r.lemma.empty()) throw Error(ErrorCode::Validation, "lemma must be non-empty");
  return store.transact([&](Transaction& tx) -> store::AnnotationId {
    if (r.client_token.empty()) throw Error(ErrorCode::Validation, "client_token must be non-empty");
    if (auto id = replayed<store::EntityAnnotation>(tx, r.client_token)) return *id;
    validate_common(r.client_token, r.line_id, tx);
    auto type = tx.node_type_by_label(r.node_type);
    if (!type) throw Error(ErrorCode::Ontology, "node type '" + r.node_type + "' is not defined");
    auto lemma = tx.upsert_lemma(r.lemma);
    if (auto same = tx.entity_by_tuple(lemma, type->id, r.line_id, user.id)) return *same;
    return tx.insert_entity_annotation({r.client_token, lemma, type->id, r.line_id, user.id});
  });
}

store::AnnotationId annotate_relation(store::Store& store, const store::User& user,
                                      const RelationRequest& r) {
  auth::require(user, Permission::Annotate);
  if (r.source_lemma.empty() || r.target_lemma.empty()) {
    throw Error(ErrorCode::Validation, "source and target lemmas must be non-empty");
  }
  return store.transact([&](Transaction& tx) -> store::AnnotationId {
    if (r.client_token.empty()) throw Error(ErrorCode::Validation, "client_token must be non-empty");
    if (auto id = replayed<store::RelationAnnotation>(tx, r.client_token)) return *id;
    validate_common(r.client_token, r.line_id, tx);
    auto type = tx.relation_type_by_label(r.relation_type);
    if (!type) {
      throw Error(ErrorCode::Ontology, "relation type '" + r.relation_type + "' is not defined");
    }
    auto source = tx.upsert_lemma(r.source_lemma);
    auto target = tx.upsert_lemma(r.target_lemma);
    std::optional<std::string> detail = r.detail;
    if (detail && detail->empty()) detail.reset();
    return tx.insert_relation_annotation(
        {r.client_token, source, target, type->id, detail, r.line_id, user.id});
  });
}

std::vector<store::Annotation> list_annotations(store::Store& store, const store::User& user,
                                                store::LineId line, Scope scope) {
  if (scope == Scope::All) {
    auth::require(user, Permission::Curate);
  } else {
    auth::require(user, Permission::Annotate);
  }
  return store.read([&](const store::StoreView& v) {
    if (!v.line(line)) throw Error(ErrorCode::NotFound, "no such line");
    return v.annotations_on_line(line, scope == Scope::Own ? std::optional(user.id) : std::nullopt);
  });
}

store::CurationState curate(store::Store& store, const store::User& user, store::AnnotationId id,
                            Decision decision) {
  auth::require(user, Permission::Curate);
  auto state = decision == Decision::Keep ? store::CurationState::Kept
                                          : store::CurationState::Discarded;
  store.transact([&](Transaction& tx) { tx.set_curation_state(id, state); });
  return state;
}

void delete_annotation(store::Store& store, const store::User& user, store::AnnotationId id) {
  auth::require(user, Permission::Annotate);
  store.transact([&](Transaction& tx) {
    auto a = tx.annotation(id);
    if (!a) throw Error(ErrorCode::NotFound, "no such annotation");
    if (!auth::authorize(user, Permission::Curate)) {
      if (store::annotator_of(*a) != user.id) {
        throw Error(ErrorCode::Authorization, "annotators may only delete their own annotations");
      }
      if (store::curation_state_of(*a) != store::CurationState::Proposed) {
        throw Error(ErrorCode::Authorization,
                    "annotation has been curated and can no longer be deleted by its author");
      }
    }
    tx.delete_annotation(id);
  });
}

std::int64_t ontology_add(store::Store& store, const store::User& user, store::OntologyKind kind,
                          const std::string& label,
                          const std::optional<std::string>& description) {
  auth::require(user, Permission::CreateOntology);
  return store.transact([&](Transaction& tx) -> std::int64_t {
    if (kind == store::OntologyKind::Node) {
      if (auto t = tx.node_type_by_label(label)) return t->id.value;
      return tx.insert_node_type(label, description).value;
    }
    if (auto t = tx.relation_type_by_label(label)) return t->id.value;
    return tx.insert_relation_type(label, description).value;
  });
}

void ontology_remove(store::Store& store, const store::User& user, store::OntologyKind kind,
                     const std::string& label) {
  auth::require(user, Permission::CreateOntology);
  store.transact([&](Transaction& tx) {
    std::int64_t uses = 0;
    if (kind == store::OntologyKind::Node) {
      auto t = tx.node_type_by_label(label);
      if (!t) throw Error(ErrorCode::NotFound, "node type '" + label + "' is not defined");
      uses = tx.node_type_usage(t->id);
      if (uses == 0) tx.delete_node_type(t->id);
    } else {
      auto t = tx.relation_type_by_label(label);
      if (!t) throw Error(ErrorCode::NotFound, "relation type '" + label + "' is not defined");
      uses = tx.relation_type_usage(t->id);
      if (uses == 0) tx.delete_relation_type(t->id);
    }
    if (uses > 0) {
      throw Error(ErrorCode::InUse, "type '" + label + "' is used by " + std::to_string(uses) +
                                        " annotation(s) and cannot be removed");
    }
  });
}

namespace {

std::string trim_punctuation(std::string word) {
  auto is_punct = [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) != 0;
  };
  while (!word.empty() && is_punct(word.back())) word.pop_back();
  std::size_t start = 0;
  while (start < word.size() && is_punct(word[start])) ++start;
  return word.substr(start);
}

std::vector<std::string> line_lemmas(const store::Line& line,
                                     const std::vector<store::AnalysisToken>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (auto lemma = t.attribute("Lemma"); lemma && !lemma->empty()) out.emplace_back(*lemma);
  }
  const std::string& words = line.split && !line.split->empty() ? *line.split : line.text;
  std::istringstream in(words);
  for (std::string w; in >> w;) {
    w = trim_punctuation(std::move(w));
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

std::vector<Suggestion> suggest(store::Store& store, store::LineId line_id,
                                const std::string& prefix, std::size_t limit) {
  if (limit == 0) throw Error(ErrorCode::Validation, "limit must be at least 1");
  return store.read([&](const store::StoreView& v) {
    auto line = v.line(line_id);
    if (!line) throw Error(ErrorCode::NotFound, "no such line");
    std::vector<Suggestion> out;
    std::set<std::string> seen;
    auto matches = [&](const std::string& lemma) {
      return lemma.compare(0, prefix.size(), prefix) == 0;
    };

    auto lemmas = line_lemmas(*line, v.tokens(line_id));
    for (std::size_t pos = 0; pos < lemmas.size() && out.size() < limit; ++pos) {
      if (!matches(lemmas[pos]) || !seen.insert(lemmas[pos]).second) continue;
      out.push_back({lemmas[pos], SuggestionSource::CurrentLine, static_cast<std::int64_t>(pos)});
    }

    std::vector<Suggestion> history;
    for (auto& [entry, uses] : v.lexicon_usage()) {
      if (matches(entry.lemma) && !seen.count(entry.lemma)) {
        history.push_back({entry.lemma, SuggestionSource::History, uses});
      }
    }
    std::sort(history.begin(), history.end(), [](const Suggestion& a, const Suggestion& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.lemma < b.lemma;
    });
    for (auto& s : history) {
      if (out.size() >= limit) break;
      out.push_back(std::move(s));
    }
    return out;
  });
}

}  // namespace lemmagraph::annotate
