// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/store/store.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include <nlohmann/json.hpp>

#include "lemmagraph/error.hpp"
#include "sqlite.hpp"

namespace lemmagraph::store {

namespace fs = std::filesystem;
using detail::Connection;
using detail::Statement;

std::string_view to_string(CurationState state) {
  switch (state) {
    case CurationState::Proposed: return "proposed";
    case CurationState::Kept: return "kept";
    case CurationState::Discarded: return "discarded";
  }
  return "?";
}

std::optional<CurationState> curation_state_from_string(std::string_view s) {
  if (s == "proposed") return CurationState::Proposed;
  if (s == "kept") return CurationState::Kept;
  if (s == "discarded") return CurationState::Discarded;
  return std::nullopt;
}

std::string_view to_string(OntologyKind kind) {
  return kind == OntologyKind::Node ? "node" : "relation";
}

std::optional<OntologyKind> ontology_kind_from_string(std::string_view s) {
  if (s == "node") return OntologyKind::Node;
  if (s == "relation") return OntologyKind::Relation;
  return std::nullopt;
}

std::optional<std::string_view> AnalysisToken::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return std::string_view(v);
  }
  return std::nullopt;
}

AnnotationId annotation_id(const Annotation& a) {
  return std::visit([](const auto& x) { return x.id; }, a);
}
UserId annotator_of(const Annotation& a) {
  return std::visit([](const auto& x) { return x.annotator_id; }, a);
}
CurationState curation_state_of(const Annotation& a) {
  return std::visit([](const auto& x) { return x.state; }, a);
}
LineId line_of(const Annotation& a) {
  return std::visit([](const auto& x) { return x.line_id; }, a);
}

namespace {

// "LGRF" in ASCII; marks files created by this store.
constexpr std::int64_t kApplicationId = 0x4C475246;

constexpr std::string_view kSchema = R"sql(
CREATE TABLE users(
  id INTEGER PRIMARY KEY,
  username TEXT NOT NULL UNIQUE CHECK(length(username) > 0),
  email TEXT NOT NULL,
  password_hash TEXT NOT NULL,
  roles INTEGER NOT NULL);
CREATE TABLE audit(
  id INTEGER PRIMARY KEY,
  actor_id INTEGER NOT NULL REFERENCES users(id),
  target_id INTEGER NOT NULL REFERENCES users(id),
  roles INTEGER NOT NULL,
  at_unix INTEGER NOT NULL);
CREATE TABLE corpora(
  id INTEGER PRIMARY KEY,
  name TEXT NOT NULL UNIQUE CHECK(length(name) > 0),
  description TEXT NOT NULL);
CREATE TABLE chapters(
  id INTEGER PRIMARY KEY,
  corpus_id INTEGER NOT NULL REFERENCES corpora(id),
  name TEXT NOT NULL CHECK(length(name) > 0),
  UNIQUE(corpus_id, name));
CREATE TABLE verses(
  id INTEGER PRIMARY KEY,
  chapter_id INTEGER NOT NULL REFERENCES chapters(id),
  verse_mark TEXT);
CREATE TABLE lines(
  id INTEGER PRIMARY KEY,
  verse_id INTEGER NOT NULL REFERENCES verses(id),
  chapter_id INTEGER NOT NULL REFERENCES chapters(id),
  ordinal INTEGER NOT NULL,
  text TEXT NOT NULL CHECK(length(text) > 0),
  split TEXT,
  analysis_source TEXT,
  analysis_text TEXT,
  UNIQUE(chapter_id, ordinal));
CREATE TABLE tokens(
  id INTEGER PRIMARY KEY,
  line_id INTEGER NOT NULL REFERENCES lines(id),
  position INTEGER NOT NULL,
  attributes TEXT NOT NULL,
  UNIQUE(line_id, position));
CREATE TABLE lexicon(
  id INTEGER PRIMARY KEY,
  lemma TEXT NOT NULL UNIQUE CHECK(length(lemma) > 0));
CREATE TABLE node_types(
  id INTEGER PRIMARY KEY,
  label TEXT NOT NULL UNIQUE CHECK(length(label) > 0),
  description TEXT);
CREATE TABLE relation_types(
  id INTEGER PRIMARY KEY,
  label TEXT NOT NULL UNIQUE CHECK(length(label) > 0),
  description TEXT);
CREATE TABLE annotations(
  id INTEGER PRIMARY KEY,
  client_token TEXT NOT NULL UNIQUE CHECK(length(client_token) > 0),
  kind INTEGER NOT NULL CHECK(kind IN (0, 1)),
  lexicon_id INTEGER NOT NULL REFERENCES lexicon(id),
  target_lexicon_id INTEGER REFERENCES lexicon(id),
  node_type_id INTEGER REFERENCES node_types(id),
  relation_type_id INTEGER REFERENCES relation_types(id),
  detail TEXT,
  line_id INTEGER NOT NULL REFERENCES lines(id),
  annotator_id INTEGER NOT NULL REFERENCES users(id),
  state INTEGER NOT NULL DEFAULT 0 CHECK(state IN (0, 1, 2)),
  CHECK((kind = 0 AND node_type_id IS NOT NULL AND relation_type_id IS NULL
         AND target_lexicon_id IS NULL)
     OR (kind = 1 AND relation_type_id IS NOT NULL AND node_type_id IS NULL
         AND target_lexicon_id IS NOT NULL)));
CREATE UNIQUE INDEX annotations_entity_tuple
  ON annotations(lexicon_id, node_type_id, line_id, annotator_id) WHERE kind = 0;
CREATE INDEX annotations_line ON annotations(line_id);
CREATE INDEX lines_verse ON lines(verse_id);
CREATE INDEX verses_chapter ON verses(chapter_id);
)sql";

constexpr std::int64_t kEntityKind = 0;
constexpr std::int64_t kRelationKind = 1;

constexpr std::string_view kAnnotationColumns =
    "id, client_token, kind, lexicon_id, target_lexicon_id, node_type_id, relation_type_id, "
    "detail, line_id, annotator_id, state";

Annotation read_annotation(const Statement& s) {
  auto state = static_cast<CurationState>(s.int64(10));
  if (s.int64(2) == kEntityKind) {
    return EntityAnnotation{AnnotationId{s.int64(0)}, s.text(1),       LexiconId{s.int64(3)},
                            NodeTypeId{s.int64(5)},   LineId{s.int64(8)}, UserId{s.int64(9)},
                            state};
  }
  return RelationAnnotation{AnnotationId{s.int64(0)},     s.text(1),
                            LexiconId{s.int64(3)},        LexiconId{s.int64(4)},
                            RelationTypeId{s.int64(6)},   s.optional_text(7),
                            LineId{s.int64(8)},           UserId{s.int64(9)},
                            state};
}

Corpus read_corpus(const Statement& s) {
  return Corpus{CorpusId{s.int64(0)}, s.text(1), s.text(2)};
}

Line read_line(const Statement& s) {
  return Line{LineId{s.int64(0)}, VerseId{s.int64(1)}, ChapterId{s.int64(2)},
              s.int64(3),         s.text(4),           s.optional_text(5),
              s.optional_text(6), s.optional_text(7)};
}

constexpr std::string_view kLineColumns =
    "id, verse_id, chapter_id, ordinal, text, split, analysis_source, analysis_text";

User read_user(const Statement& s) {
  return User{UserId{s.int64(0)}, s.text(1), s.text(2), s.text(3),
              auth::RoleSet::from_bits(static_cast<std::uint8_t>(s.int64(4)))};
}

std::string sql(std::string_view a, std::string_view b, std::string_view c = {}) {
  std::string out(a);
  out += b;
  out += c;
  return out;
}

template <class T, class F>
std::optional<T> first_row(Statement& s, F&& read) {
  if (!s.step()) return std::nullopt;
  return read(s);
}

template <class T, class F>
std::vector<T> all_rows(Statement& s, F&& read) {
  std::vector<T> out;
  while (s.step()) out.push_back(read(s));
  return out;
}

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

void validate_type_label(const std::string& label) {
  if (label.empty()) throw Error(ErrorCode::Validation, "ontology label must be non-empty");
  if (has_whitespace(label)) {
    throw Error(ErrorCode::Validation,
                "ontology label '" + label + "' must not contain whitespace");
  }
}

[[noreturn]] void missing_reference(std::string_view invariant) {
  throw Error(ErrorCode::Constraint, std::string(invariant));
}

std::string append_filter(const AnnotationFilter& f, std::string base) {
  if (!f.states.empty()) {
    base += " AND a.state IN (";
    bool first = true;
    for (auto st : f.states) {
      if (!first) base += ",";
      base += std::to_string(static_cast<int>(st));
      first = false;
    }
    base += ")";
  }
  if (!f.corpora.empty()) {
    base += " AND c.corpus_id IN (";
    bool first = true;
    for (auto id : f.corpora) {
      if (!first) base += ",";
      base += std::to_string(id.value);
      first = false;
    }
    base += ")";
  }
  base += " ORDER BY a.id";
  return base;
}

}  // namespace

// ---------------------------------------------------------------------------
// StoreView

std::vector<Corpus> StoreView::corpora() const {
  auto s = conn().prepare("SELECT id, name, description FROM corpora ORDER BY id");
  return all_rows<Corpus>(s, read_corpus);
}

std::optional<Corpus> StoreView::corpus(CorpusId id) const {
  auto s = conn().prepare("SELECT id, name, description FROM corpora WHERE id = ?");
  s.bind(1, id.value);
  return first_row<Corpus>(s, read_corpus);
}

std::optional<Corpus> StoreView::corpus_by_name(const std::string& name) const {
  auto s = conn().prepare("SELECT id, name, description FROM corpora WHERE name = ?");
  s.bind(1, name);
  return first_row<Corpus>(s, read_corpus);
}

namespace {
Chapter read_chapter(const Statement& s) {
  return Chapter{ChapterId{s.int64(0)}, CorpusId{s.int64(1)}, s.text(2)};
}
Verse read_verse(const Statement& s) {
  return Verse{VerseId{s.int64(0)}, ChapterId{s.int64(1)}, s.optional_text(2)};
}
}  // namespace

std::vector<Chapter> StoreView::chapters(CorpusId corpus) const {
  auto s = conn().prepare("SELECT id, corpus_id, name FROM chapters WHERE corpus_id = ? ORDER BY id");
  s.bind(1, corpus.value);
  return all_rows<Chapter>(s, read_chapter);
}

std::optional<Chapter> StoreView::chapter(ChapterId id) const {
  auto s = conn().prepare("SELECT id, corpus_id, name FROM chapters WHERE id = ?");
  s.bind(1, id.value);
  return first_row<Chapter>(s, read_chapter);
}

std::optional<Chapter> StoreView::chapter_by_name(CorpusId corpus, const std::string& name) const {
  auto s = conn().prepare(
      "SELECT id, corpus_id, name FROM chapters WHERE corpus_id = ? AND name = ?");
  s.bind(1, corpus.value).bind(2, name);
  return first_row<Chapter>(s, read_chapter);
}

std::optional<Verse> StoreView::verse(VerseId id) const {
  auto s = conn().prepare("SELECT id, chapter_id, verse_mark FROM verses WHERE id = ?");
  s.bind(1, id.value);
  return first_row<Verse>(s, read_verse);
}

std::vector<Verse> StoreView::verses(ChapterId chapter) const {
  auto s = conn().prepare(
      "SELECT id, chapter_id, verse_mark FROM verses WHERE chapter_id = ? ORDER BY id");
  s.bind(1, chapter.value);
  return all_rows<Verse>(s, read_verse);
}

std::optional<Line> StoreView::line(LineId id) const {
  auto s = conn().prepare(sql("SELECT ", kLineColumns, " FROM lines WHERE id = ?"));
  s.bind(1, id.value);
  return first_row<Line>(s, read_line);
}

std::vector<Line> StoreView::lines(CorpusId corpus, std::int64_t offset,
                                   std::int64_t limit) const {
  auto s = conn().prepare(sql(
      "SELECT l.id, l.verse_id, l.chapter_id, l.ordinal, l.text, l.split, l.analysis_source, "
      "l.analysis_text FROM lines l JOIN chapters c ON c.id = l.chapter_id ",
      "WHERE c.corpus_id = ? ORDER BY c.id, l.ordinal LIMIT ? OFFSET ?"));
  s.bind(1, corpus.value).bind(2, limit).bind(3, offset);
  return all_rows<Line>(s, read_line);
}

std::vector<Line> StoreView::chapter_lines(ChapterId chapter) const {
  auto s = conn().prepare(
      sql("SELECT ", kLineColumns, " FROM lines WHERE chapter_id = ? ORDER BY ordinal"));
  s.bind(1, chapter.value);
  return all_rows<Line>(s, read_line);
}

std::int64_t StoreView::line_count(CorpusId corpus) const {
  auto s = conn().prepare(
      "SELECT count(*) FROM lines l JOIN chapters c ON c.id = l.chapter_id WHERE c.corpus_id = ?");
  s.bind(1, corpus.value);
  s.step();
  return s.int64(0);
}

std::vector<AnalysisToken> StoreView::tokens(LineId line) const {
  auto s = conn().prepare(
      "SELECT id, line_id, position, attributes FROM tokens WHERE line_id = ? ORDER BY position");
  s.bind(1, line.value);
  return all_rows<AnalysisToken>(s, [](const Statement& row) {
    AnalysisToken t{TokenId{row.int64(0)}, LineId{row.int64(1)}, row.int64(2), {}};
    for (const auto& pair : nlohmann::json::parse(row.text(3))) {
      t.attributes.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    }
    return t;
  });
}

std::int64_t StoreView::token_count(ChapterId chapter) const {
  auto s = conn().prepare(
      "SELECT count(*) FROM tokens t JOIN lines l ON l.id = t.line_id WHERE l.chapter_id = ?");
  s.bind(1, chapter.value);
  s.step();
  return s.int64(0);
}

namespace {
LexiconEntry read_lexicon(const Statement& s) {
  return LexiconEntry{LexiconId{s.int64(0)}, s.text(1)};
}
}  // namespace

std::optional<LexiconEntry> StoreView::lexicon_entry(LexiconId id) const {
  auto s = conn().prepare("SELECT id, lemma FROM lexicon WHERE id = ?");
  s.bind(1, id.value);
  return first_row<LexiconEntry>(s, read_lexicon);
}

std::optional<LexiconEntry> StoreView::lexicon_by_lemma(const std::string& lemma) const {
  auto s = conn().prepare("SELECT id, lemma FROM lexicon WHERE lemma = ?");
  s.bind(1, lemma);
  return first_row<LexiconEntry>(s, read_lexicon);
}

std::vector<LexiconEntry> StoreView::lexicon() const {
  auto s = conn().prepare("SELECT id, lemma FROM lexicon ORDER BY id");
  return all_rows<LexiconEntry>(s, read_lexicon);
}

std::vector<std::pair<LexiconEntry, std::int64_t>> StoreView::lexicon_usage() const {
  auto s = conn().prepare(
      "SELECT x.id, x.lemma, "
      "  (SELECT count(*) FROM annotations a WHERE a.lexicon_id = x.id) + "
      "  (SELECT count(*) FROM annotations a WHERE a.target_lexicon_id = x.id) "
      "FROM lexicon x ORDER BY x.id");
  std::vector<std::pair<LexiconEntry, std::int64_t>> out;
  while (s.step()) out.emplace_back(read_lexicon(s), s.int64(2));
  return out;
}

namespace {
NodeTypeDef read_node_type(const Statement& s) {
  return NodeTypeDef{NodeTypeId{s.int64(0)}, s.text(1), s.optional_text(2)};
}
RelationTypeDef read_relation_type(const Statement& s) {
  return RelationTypeDef{RelationTypeId{s.int64(0)}, s.text(1), s.optional_text(2)};
}
}  // namespace

std::vector<NodeTypeDef> StoreView::node_types() const {
  auto s = conn().prepare("SELECT id, label, description FROM node_types ORDER BY label");
  return all_rows<NodeTypeDef>(s, read_node_type);
}

std::vector<RelationTypeDef> StoreView::relation_types() const {
  auto s = conn().prepare("SELECT id, label, description FROM relation_types ORDER BY label");
  return all_rows<RelationTypeDef>(s, read_relation_type);
}

std::optional<NodeTypeDef> StoreView::node_type(NodeTypeId id) const {
  auto s = conn().prepare("SELECT id, label, description FROM node_types WHERE id = ?");
  s.bind(1, id.value);
  return first_row<NodeTypeDef>(s, read_node_type);
}

std::optional<RelationTypeDef> StoreView::relation_type(RelationTypeId id) const {
  auto s = conn().prepare("SELECT id, label, description FROM relation_types WHERE id = ?");
  s.bind(1, id.value);
  return first_row<RelationTypeDef>(s, read_relation_type);
}

std::optional<NodeTypeDef> StoreView::node_type_by_label(const std::string& label) const {
  auto s = conn().prepare("SELECT id, label, description FROM node_types WHERE label = ?");
  s.bind(1, label);
  return first_row<NodeTypeDef>(s, read_node_type);
}

std::optional<RelationTypeDef> StoreView::relation_type_by_label(const std::string& label) const {
  auto s = conn().prepare("SELECT id, label, description FROM relation_types WHERE label = ?");
  s.bind(1, label);
  return first_row<RelationTypeDef>(s, read_relation_type);
}

std::int64_t StoreView::node_type_usage(NodeTypeId id) const {
  auto s = conn().prepare("SELECT count(*) FROM annotations WHERE node_type_id = ?");
  s.bind(1, id.value);
  s.step();
  return s.int64(0);
}

std::int64_t StoreView::relation_type_usage(RelationTypeId id) const {
  auto s = conn().prepare("SELECT count(*) FROM annotations WHERE relation_type_id = ?");
  s.bind(1, id.value);
  s.step();
  return s.int64(0);
}

std::optional<User> StoreView::user(UserId id) const {
  auto s = conn().prepare(
      "SELECT id, username, email, password_hash, roles FROM users WHERE id = ?");
  s.bind(1, id.value);
  return first_row<User>(s, read_user);
}

std::optional<User> StoreView::user_by_name(const std::string& username) const {
  auto s = conn().prepare(
      "SELECT id, username, email, password_hash, roles FROM users WHERE username = ?");
  s.bind(1, username);
  return first_row<User>(s, read_user);
}

std::vector<User> StoreView::users() const {
  auto s = conn().prepare("SELECT id, username, email, password_hash, roles FROM users ORDER BY id");
  return all_rows<User>(s, read_user);
}

std::vector<AuditRecord> StoreView::audit_log() const {
  auto s = conn().prepare("SELECT id, actor_id, target_id, roles, at_unix FROM audit ORDER BY id");
  return all_rows<AuditRecord>(s, [](const Statement& r) {
    return AuditRecord{r.int64(0), UserId{r.int64(1)}, UserId{r.int64(2)},
                       auth::RoleSet::from_bits(static_cast<std::uint8_t>(r.int64(3))),
                       r.int64(4)};
  });
}

std::optional<Annotation> StoreView::annotation(AnnotationId id) const {
  auto s = conn().prepare(sql("SELECT ", kAnnotationColumns, " FROM annotations WHERE id = ?"));
  s.bind(1, id.value);
  return first_row<Annotation>(s, read_annotation);
}

std::optional<Annotation> StoreView::annotation_by_token(const std::string& client_token) const {
  auto s = conn().prepare(
      sql("SELECT ", kAnnotationColumns, " FROM annotations WHERE client_token = ?"));
  s.bind(1, client_token);
  return first_row<Annotation>(s, read_annotation);
}

std::optional<AnnotationId> StoreView::entity_by_tuple(LexiconId lexicon, NodeTypeId type,
                                                       LineId line, UserId annotator) const {
  auto s = conn().prepare(
      "SELECT id FROM annotations WHERE kind = 0 AND lexicon_id = ? AND node_type_id = ? "
      "AND line_id = ? AND annotator_id = ?");
  s.bind(1, lexicon.value).bind(2, type.value).bind(3, line.value).bind(4, annotator.value);
  if (!s.step()) return std::nullopt;
  return AnnotationId{s.int64(0)};
}

std::vector<Annotation> StoreView::annotations_on_line(LineId line,
                                                       std::optional<UserId> annotator) const {
  std::string q = sql("SELECT ", kAnnotationColumns, " FROM annotations WHERE line_id = ?");
  if (annotator) q += " AND annotator_id = ?";
  q += " ORDER BY id";
  auto s = conn().prepare(q);
  s.bind(1, line.value);
  if (annotator) s.bind(2, annotator->value);
  return all_rows<Annotation>(s, read_annotation);
}

std::vector<EntityAnnotation> StoreView::entity_annotations(const AnnotationFilter& filter) const {
  auto s = conn().prepare(append_filter(
      filter,
      "SELECT a.id, a.client_token, a.kind, a.lexicon_id, a.target_lexicon_id, a.node_type_id, "
      "a.relation_type_id, a.detail, a.line_id, a.annotator_id, a.state FROM annotations a "
      "JOIN lines l ON l.id = a.line_id JOIN chapters c ON c.id = l.chapter_id "
      "WHERE a.kind = 0"));
  return all_rows<EntityAnnotation>(
      s, [](const Statement& r) { return std::get<EntityAnnotation>(read_annotation(r)); });
}

std::vector<RelationAnnotation> StoreView::relation_annotations(
    const AnnotationFilter& filter) const {
  auto s = conn().prepare(append_filter(
      filter,
      "SELECT a.id, a.client_token, a.kind, a.lexicon_id, a.target_lexicon_id, a.node_type_id, "
      "a.relation_type_id, a.detail, a.line_id, a.annotator_id, a.state FROM annotations a "
      "JOIN lines l ON l.id = a.line_id JOIN chapters c ON c.id = l.chapter_id "
      "WHERE a.kind = 1"));
  return all_rows<RelationAnnotation>(
      s, [](const Statement& r) { return std::get<RelationAnnotation>(read_annotation(r)); });
}

std::int64_t StoreView::annotation_count() const {
  return conn().scalar("SELECT count(*) FROM annotations");
}

CorpusCounts StoreView::corpus_counts(CorpusId corpus) const {
  CorpusCounts out;
  out.lines = line_count(corpus);
  auto s = conn().prepare(
      "SELECT count(DISTINCT a.annotator_id), "
      "  coalesce(sum(a.kind = 0), 0), coalesce(sum(a.kind = 1), 0) "
      "FROM annotations a JOIN lines l ON l.id = a.line_id "
      "JOIN chapters c ON c.id = l.chapter_id WHERE c.corpus_id = ?");
  s.bind(1, corpus.value);
  if (s.step()) {
    out.annotators = s.int64(0);
    out.node_annotations = s.int64(1);
    out.relation_annotations = s.int64(2);
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> StoreView::annotation_counts_by(UserId user) const {
  auto s = conn().prepare(
      "SELECT coalesce(sum(kind = 0), 0), coalesce(sum(kind = 1), 0) FROM annotations "
      "WHERE annotator_id = ?");
  s.bind(1, user.value);
  s.step();
  return {s.int64(0), s.int64(1)};
}

// ---------------------------------------------------------------------------
// Transaction

CorpusId Transaction::insert_corpus(const std::string& name, const std::string& description) {
  if (name.empty()) throw Error(ErrorCode::Validation, "corpus name must be non-empty");
  if (corpus_by_name(name)) {
    throw Error(ErrorCode::Duplicate, "corpus '" + name + "' already exists");
  }
  conn().prepare("INSERT INTO corpora(name, description) VALUES(?, ?)")
      .bind(1, name)
      .bind(2, description)
      .run();
  return CorpusId{conn().last_insert_rowid()};
}

ChapterId Transaction::insert_chapter(CorpusId corpus, const std::string& name) {
  if (!this->corpus(corpus)) missing_reference("chapter.corpus_id references a missing corpus");
  if (name.empty()) throw Error(ErrorCode::Validation, "chapter name must be non-empty");
  if (chapter_by_name(corpus, name)) {
    throw Error(ErrorCode::Duplicate, "chapter '" + name + "' already exists in corpus");
  }
  conn().prepare("INSERT INTO chapters(corpus_id, name) VALUES(?, ?)")
      .bind(1, corpus.value)
      .bind(2, name)
      .run();
  return ChapterId{conn().last_insert_rowid()};
}

VerseId Transaction::insert_verse(ChapterId chapter, const std::optional<std::string>& mark) {
  if (!this->chapter(chapter)) missing_reference("verse.chapter_id references a missing chapter");
  conn().prepare("INSERT INTO verses(chapter_id, verse_mark) VALUES(?, ?)")
      .bind(1, chapter.value)
      .bind(2, mark)
      .run();
  return VerseId{conn().last_insert_rowid()};
}

LineId Transaction::insert_line(const NewLine& line) {
  auto v = verse(line.verse_id);
  if (!v) missing_reference("line.verse_id references a missing verse");
  if (v->chapter_id != line.chapter_id) {
    missing_reference("line.chapter_id must match the chapter of its verse");
  }
  if (line.text.empty()) throw Error(ErrorCode::Validation, "line text must be non-empty");
  conn()
      .prepare(
          "INSERT INTO lines(verse_id, chapter_id, ordinal, text, split, analysis_source, "
          "analysis_text) VALUES(?, ?, ?, ?, ?, ?, ?)")
      .bind(1, line.verse_id.value)
      .bind(2, line.chapter_id.value)
      .bind(3, line.ordinal)
      .bind(4, line.text)
      .bind(5, line.split)
      .bind(6, line.analysis_source)
      .bind(7, line.analysis_text)
      .run();
  return LineId{conn().last_insert_rowid()};
}

TokenId Transaction::insert_token(LineId line, std::int64_t position,
                                  const std::vector<Attribute>& attributes) {
  if (!this->line(line)) missing_reference("token.line_id references a missing line");
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [k, v] : attributes) pairs.push_back({k, v});
  conn().prepare("INSERT INTO tokens(line_id, position, attributes) VALUES(?, ?, ?)")
      .bind(1, line.value)
      .bind(2, position)
      .bind(3, pairs.dump())
      .run();
  return TokenId{conn().last_insert_rowid()};
}

LexiconId Transaction::upsert_lemma(const std::string& lemma) {
  if (lemma.empty()) throw Error(ErrorCode::Validation, "lemma must be non-empty");
  if (auto existing = lexicon_by_lemma(lemma)) return existing->id;
  conn().prepare("INSERT INTO lexicon(lemma) VALUES(?)").bind(1, lemma).run();
  return LexiconId{conn().last_insert_rowid()};
}

NodeTypeId Transaction::insert_node_type(const std::string& label,
                                         const std::optional<std::string>& description) {
  validate_type_label(label);
  conn().prepare("INSERT INTO node_types(label, description) VALUES(?, ?)")
      .bind(1, label)
      .bind(2, description)
      .run();
  return NodeTypeId{conn().last_insert_rowid()};
}

RelationTypeId Transaction::insert_relation_type(const std::string& label,
                                                 const std::optional<std::string>& description) {
  validate_type_label(label);
  conn().prepare("INSERT INTO relation_types(label, description) VALUES(?, ?)")
      .bind(1, label)
      .bind(2, description)
      .run();
  return RelationTypeId{conn().last_insert_rowid()};
}

void Transaction::delete_node_type(NodeTypeId id) {
  conn().prepare("DELETE FROM node_types WHERE id = ?").bind(1, id.value).run();
}

void Transaction::delete_relation_type(RelationTypeId id) {
  conn().prepare("DELETE FROM relation_types WHERE id = ?").bind(1, id.value).run();
}

UserId Transaction::insert_user(const std::string& username, const std::string& email,
                                const std::string& password_hash, auth::RoleSet roles) {
  if (username.empty()) throw Error(ErrorCode::Validation, "username must be non-empty");
  if (user_by_name(username)) {
    throw Error(ErrorCode::Duplicate, "username '" + username + "' is taken");
  }
  conn()
      .prepare("INSERT INTO users(username, email, password_hash, roles) VALUES(?, ?, ?, ?)")
      .bind(1, username)
      .bind(2, email)
      .bind(3, password_hash)
      .bind(4, static_cast<std::int64_t>(roles.bits()))
      .run();
  return UserId{conn().last_insert_rowid()};
}

void Transaction::set_roles(UserId user, auth::RoleSet roles) {
  conn().prepare("UPDATE users SET roles = ? WHERE id = ?")
      .bind(1, static_cast<std::int64_t>(roles.bits()))
      .bind(2, user.value)
      .run();
  if (conn().changes() == 0) throw Error(ErrorCode::NotFound, "no such user");
}

void Transaction::append_audit(UserId actor, UserId target, auth::RoleSet roles,
                               std::int64_t at_unix) {
  conn()
      .prepare("INSERT INTO audit(actor_id, target_id, roles, at_unix) VALUES(?, ?, ?, ?)")
      .bind(1, actor.value)
      .bind(2, target.value)
      .bind(3, static_cast<std::int64_t>(roles.bits()))
      .bind(4, at_unix)
      .run();
}

AnnotationId Transaction::insert_entity_annotation(const NewEntityAnnotation& a) {
  if (a.client_token.empty()) throw Error(ErrorCode::Validation, "client_token must be non-empty");
  if (!lexicon_entry(a.lexicon_id)) missing_reference("annotation.lexicon_id references a missing lemma");
  if (!node_type(a.node_type_id)) missing_reference("annotation.node_type_id references a missing node type");
  if (!line(a.line_id)) missing_reference("annotation.line_id references a missing line");
  if (!user(a.annotator_id)) missing_reference("annotation.annotator_id references a missing user");
  conn()
      .prepare(
          "INSERT INTO annotations(client_token, kind, lexicon_id, node_type_id, line_id, "
          "annotator_id) VALUES(?, 0, ?, ?, ?, ?)")
      .bind(1, a.client_token)
      .bind(2, a.lexicon_id.value)
      .bind(3, a.node_type_id.value)
      .bind(4, a.line_id.value)
      .bind(5, a.annotator_id.value)
      .run();
  return AnnotationId{conn().last_insert_rowid()};
}

AnnotationId Transaction::insert_relation_annotation(const NewRelationAnnotation& a) {
  if (a.client_token.empty()) throw Error(ErrorCode::Validation, "client_token must be non-empty");
  if (!lexicon_entry(a.source_lexicon_id)) missing_reference("annotation.source_lexicon_id references a missing lemma");
  if (!lexicon_entry(a.target_lexicon_id)) missing_reference("annotation.target_lexicon_id references a missing lemma");
  if (!relation_type(a.relation_type_id)) missing_reference("annotation.relation_type_id references a missing relation type");
  if (!line(a.line_id)) missing_reference("annotation.line_id references a missing line");
  if (!user(a.annotator_id)) missing_reference("annotation.annotator_id references a missing user");
  conn()
      .prepare(
          "INSERT INTO annotations(client_token, kind, lexicon_id, target_lexicon_id, "
          "relation_type_id, detail, line_id, annotator_id) VALUES(?, 1, ?, ?, ?, ?, ?, ?)")
      .bind(1, a.client_token)
      .bind(2, a.source_lexicon_id.value)
      .bind(3, a.target_lexicon_id.value)
      .bind(4, a.relation_type_id.value)
      .bind(5, a.detail)
      .bind(6, a.line_id.value)
      .bind(7, a.annotator_id.value)
      .run();
  return AnnotationId{conn().last_insert_rowid()};
}

void Transaction::set_curation_state(AnnotationId id, CurationState state) {
  conn().prepare("UPDATE annotations SET state = ? WHERE id = ?")
      .bind(1, static_cast<std::int64_t>(state))
      .bind(2, id.value)
      .run();
  if (conn().changes() == 0) throw Error(ErrorCode::NotFound, "no such annotation");
}

void Transaction::delete_annotation(AnnotationId id) {
  conn().prepare("DELETE FROM annotations WHERE id = ?").bind(1, id.value).run();
  if (conn().changes() == 0) throw Error(ErrorCode::NotFound, "no such annotation");
}

// ---------------------------------------------------------------------------
// Store

struct Store::Impl {
  fs::path file;
  std::mutex write_mutex;
  std::unique_ptr<Connection> writer;
  mutable std::mutex pool_mutex;
  mutable std::vector<std::unique_ptr<Connection>> idle_readers;

  std::unique_ptr<Connection> acquire_reader() const {
    {
      std::lock_guard lock(pool_mutex);
      if (!idle_readers.empty()) {
        auto c = std::move(idle_readers.back());
        idle_readers.pop_back();
        return c;
      }
    }
    auto c = std::make_unique<Connection>(file.string(), false);
    c->exec("PRAGMA foreign_keys = ON; PRAGMA query_only = ON;");
    return c;
  }

  void release_reader(std::unique_ptr<Connection> c) const {
    std::lock_guard lock(pool_mutex);
    idle_readers.push_back(std::move(c));
  }
};

Store::Store(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Store::Store(Store&&) noexcept = default;
Store& Store::operator=(Store&&) noexcept = default;
Store::~Store() = default;

const fs::path& Store::file() const { return impl_->file; }

Store Store::open(const fs::path& path) {
  auto impl = std::make_unique<Impl>();
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    impl->file = path / "store.db";
  } else {
    impl->file = path;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  }
  impl->writer = std::make_unique<Connection>(impl->file.string(), true);
  auto& w = *impl->writer;

  // The first statement that reads the header rejects non-database files.
  std::int64_t app_id = w.scalar("PRAGMA application_id");
  std::int64_t version = w.scalar("PRAGMA user_version");
  std::int64_t objects = w.scalar("SELECT count(*) FROM sqlite_master");

  if (objects == 0 && app_id == 0 && version == 0) {
    w.exec("PRAGMA journal_mode = WAL");
    w.exec("BEGIN IMMEDIATE");
    try {
      w.exec(kSchema);
      w.exec("PRAGMA application_id = " + std::to_string(kApplicationId));
      w.exec("PRAGMA user_version = " + std::to_string(kSchemaVersion));
      w.exec("COMMIT");
    } catch (...) {
      w.exec("ROLLBACK");
      throw;
    }
  } else if (app_id != kApplicationId) {
    throw Error(ErrorCode::UnrecoverableStore,
                "'" + impl->file.string() + "' is not a store created by this program");
  } else if (version != kSchemaVersion) {
    throw Error(ErrorCode::UnrecoverableStore,
                "store schema version " + std::to_string(version) + " is not supported (expected " +
                    std::to_string(kSchemaVersion) + ")");
  } else {
    w.exec("PRAGMA journal_mode = WAL");
  }
  w.exec("PRAGMA foreign_keys = ON");
  return Store(std::move(impl));
}

void Store::read_impl(const std::function<void(const StoreView&)>& fn) const {
  auto conn = impl_->acquire_reader();
  conn->exec("BEGIN");
  try {
    StoreView view(*conn);
    fn(view);
    conn->exec("COMMIT");
  } catch (...) {
    conn->exec("ROLLBACK");
    impl_->release_reader(std::move(conn));
    throw;
  }
  impl_->release_reader(std::move(conn));
}

void Store::transact_impl(const std::function<void(Transaction&)>& fn) {
  std::lock_guard lock(impl_->write_mutex);
  auto& w = *impl_->writer;
  w.exec("BEGIN IMMEDIATE");
  try {
    Transaction tx(w);
    fn(tx);
    w.exec("COMMIT");
  } catch (...) {
    if (!sqlite3_get_autocommit(w.handle())) w.exec("ROLLBACK");
    throw;
  }
}

LexiconId upsert_lemma(Store& store, const std::string& lemma) {
  if (lemma.empty()) throw Error(ErrorCode::Validation, "lemma must be non-empty");
  return store.transact([&](Transaction& tx) { return tx.upsert_lemma(lemma); });
}

}  // namespace lemmagraph::store
