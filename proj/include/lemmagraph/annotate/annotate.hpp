// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lemmagraph/store/store.hpp"

namespace lemmagraph::annotate {

struct EntityRequest {
  std::string client_token;
  store::LineId line_id;
  std::string lemma;
  std::string node_type;
};

struct RelationRequest {
  std::string client_token;
  store::LineId line_id;
  std::string source_lemma;
  std::string target_lemma;
  std::string relation_type;
  std::optional<std::string> detail;
};

/// Stores an entity annotation. Replaying a client_token returns the id the
/// token was first committed under; resubmitting the same (lemma, type, line)
/// as the same annotator returns the existing annotation.
store::AnnotationId annotate_entity(store::Store& store, const store::User& user,
                                    const EntityRequest& request);

store::AnnotationId annotate_relation(store::Store& store, const store::User& user,
                                      const RelationRequest& request);

enum class Scope { Own, All };

std::vector<store::Annotation> list_annotations(store::Store& store, const store::User& user,
                                                store::LineId line, Scope scope);

enum class Decision { Keep, Discard };

store::CurationState curate(store::Store& store, const store::User& user,
                            store::AnnotationId id, Decision decision);

/// Annotators may delete their own proposed annotations; curators any.
void delete_annotation(store::Store& store, const store::User& user, store::AnnotationId id);

/// Idempotent on label; returns the definition's id.
std::int64_t ontology_add(store::Store& store, const store::User& user, store::OntologyKind kind,
                          const std::string& label,
                          const std::optional<std::string>& description = std::nullopt);

/// Fails with InUse while any annotation references the label.
void ontology_remove(store::Store& store, const store::User& user, store::OntologyKind kind,
                     const std::string& label);

enum class SuggestionSource { CurrentLine, History };

struct Suggestion {
  std::string lemma;
  SuggestionSource source = SuggestionSource::History;
  /// Token position for current-line suggestions, usage count for history.
  std::int64_t weight = 0;

  bool operator==(const Suggestion&) const = default;
};

/// Lemma completions for `prefix`: lemmas of the line being annotated in
/// token order, then previously used lemmas by descending usage count (ties
/// broken lexicographically), truncated to `limit`.
std::vector<Suggestion> suggest(store::Store& store, store::LineId line, const std::string& prefix,
                                std::size_t limit);

}  // namespace lemmagraph::annotate
