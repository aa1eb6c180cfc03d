// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lemmagraph/auth/roles.hpp"

namespace lemmagraph::store {

/// Row identifier tagged with the table it belongs to.
template <class Tag>
struct Id {
  std::int64_t value = 0;
  constexpr auto operator<=>(const Id&) const = default;
};

using CorpusId = Id<struct CorpusTag>;
using ChapterId = Id<struct ChapterTag>;
using VerseId = Id<struct VerseTag>;
using LineId = Id<struct LineTag>;
using TokenId = Id<struct TokenTag>;
using LexiconId = Id<struct LexiconTag>;
using NodeTypeId = Id<struct NodeTypeTag>;
using RelationTypeId = Id<struct RelationTypeTag>;
using UserId = Id<struct UserTag>;
using AnnotationId = Id<struct AnnotationTag>;

enum class CurationState : std::uint8_t { Proposed, Kept, Discarded };

std::string_view to_string(CurationState state);
std::optional<CurationState> curation_state_from_string(std::string_view s);

enum class OntologyKind : std::uint8_t { Node, Relation };

std::string_view to_string(OntologyKind kind);
std::optional<OntologyKind> ontology_kind_from_string(std::string_view s);

struct Corpus {
  CorpusId id;
  std::string name;
  std::string description;
};

struct Chapter {
  ChapterId id;
  CorpusId corpus_id;
  std::string name;
};

struct Verse {
  VerseId id;
  ChapterId chapter_id;
  std::optional<std::string> verse_mark;
};

struct Line {
  LineId id;
  VerseId verse_id;
  ChapterId chapter_id;
  std::int64_t ordinal = 0;
  std::string text;
  std::optional<std::string> split;
  std::optional<std::string> analysis_source;
  std::optional<std::string> analysis_text;
};

using Attribute = std::pair<std::string, std::string>;

struct AnalysisToken {
  TokenId id;
  LineId line_id;
  std::int64_t position = 0;
  std::vector<Attribute> attributes;

  std::optional<std::string_view> attribute(std::string_view key) const;
};

struct LexiconEntry {
  LexiconId id;
  std::string lemma;
};

struct NodeTypeDef {
  NodeTypeId id;
  std::string label;
  std::optional<std::string> description;
};

struct RelationTypeDef {
  RelationTypeId id;
  std::string label;
  std::optional<std::string> description;
};

struct User {
  UserId id;
  std::string username;
  std::string email;
  std::string password_hash;
  auth::RoleSet roles;
};

struct AuditRecord {
  std::int64_t id = 0;
  UserId actor_id;
  UserId target_id;
  auth::RoleSet roles;
  std::int64_t at_unix = 0;
};

struct EntityAnnotation {
  AnnotationId id;
  std::string client_token;
  LexiconId lexicon_id;
  NodeTypeId node_type_id;
  LineId line_id;
  UserId annotator_id;
  CurationState state = CurationState::Proposed;
};

struct RelationAnnotation {
  AnnotationId id;
  std::string client_token;
  LexiconId source_lexicon_id;
  LexiconId target_lexicon_id;
  RelationTypeId relation_type_id;
  std::optional<std::string> detail;
  LineId line_id;
  UserId annotator_id;
  CurationState state = CurationState::Proposed;
};

using Annotation = std::variant<EntityAnnotation, RelationAnnotation>;

AnnotationId annotation_id(const Annotation& a);
UserId annotator_of(const Annotation& a);
CurationState curation_state_of(const Annotation& a);
LineId line_of(const Annotation& a);

}  // namespace lemmagraph::store

template <class Tag>
struct std::hash<lemmagraph::store::Id<Tag>> {
  std::size_t operator()(const lemmagraph::store::Id<Tag>& id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};
