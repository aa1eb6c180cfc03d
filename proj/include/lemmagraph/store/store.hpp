// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "lemmagraph/store/types.hpp"

namespace lemmagraph::store {

namespace detail {
class Connection;
}

/// Selection used when reading annotations in bulk.
struct AnnotationFilter {
  std::set<CurationState> states;  // empty = every state
  std::set<CorpusId> corpora;      // empty = every corpus
};

struct CorpusCounts {
  std::int64_t lines = 0;
  std::int64_t annotators = 0;
  std::int64_t node_annotations = 0;
  std::int64_t relation_annotations = 0;
};

struct NewLine {
  VerseId verse_id;
  ChapterId chapter_id;
  std::int64_t ordinal = 0;
  std::string text;
  std::optional<std::string> split;
  std::optional<std::string> analysis_source;
  std::optional<std::string> analysis_text;
};

struct NewEntityAnnotation {
  std::string client_token;
  LexiconId lexicon_id;
  NodeTypeId node_type_id;
  LineId line_id;
  UserId annotator_id;
};

struct NewRelationAnnotation {
  std::string client_token;
  LexiconId source_lexicon_id;
  LexiconId target_lexicon_id;
  RelationTypeId relation_type_id;
  std::optional<std::string> detail;
  LineId line_id;
  UserId annotator_id;
};

/// Read access to a consistent snapshot of the store.
class StoreView {
 public:
  explicit StoreView(detail::Connection& conn) : conn_(&conn) {}

  std::vector<Corpus> corpora() const;
  std::optional<Corpus> corpus(CorpusId id) const;
  std::optional<Corpus> corpus_by_name(const std::string& name) const;

  std::vector<Chapter> chapters(CorpusId corpus) const;
  std::optional<Chapter> chapter(ChapterId id) const;
  std::optional<Chapter> chapter_by_name(CorpusId corpus, const std::string& name) const;

  std::optional<Verse> verse(VerseId id) const;
  std::vector<Verse> verses(ChapterId chapter) const;

  std::optional<Line> line(LineId id) const;
  /// Lines of a corpus in chapter order, then ordinal order.
  std::vector<Line> lines(CorpusId corpus, std::int64_t offset, std::int64_t limit) const;
  std::vector<Line> chapter_lines(ChapterId chapter) const;
  std::int64_t line_count(CorpusId corpus) const;
  std::vector<AnalysisToken> tokens(LineId line) const;
  std::int64_t token_count(ChapterId chapter) const;

  std::optional<LexiconEntry> lexicon_entry(LexiconId id) const;
  std::optional<LexiconEntry> lexicon_by_lemma(const std::string& lemma) const;
  std::vector<LexiconEntry> lexicon() const;
  /// Every lexicon entry with the number of annotations referencing it (as
  /// entity lemma or relation endpoint).
  std::vector<std::pair<LexiconEntry, std::int64_t>> lexicon_usage() const;

  std::vector<NodeTypeDef> node_types() const;
  std::vector<RelationTypeDef> relation_types() const;
  std::optional<NodeTypeDef> node_type(NodeTypeId id) const;
  std::optional<RelationTypeDef> relation_type(RelationTypeId id) const;
  std::optional<NodeTypeDef> node_type_by_label(const std::string& label) const;
  std::optional<RelationTypeDef> relation_type_by_label(const std::string& label) const;
  std::int64_t node_type_usage(NodeTypeId id) const;
  std::int64_t relation_type_usage(RelationTypeId id) const;

  std::optional<User> user(UserId id) const;
  std::optional<User> user_by_name(const std::string& username) const;
  std::vector<User> users() const;
  std::vector<AuditRecord> audit_log() const;

  std::optional<Annotation> annotation(AnnotationId id) const;
  std::optional<Annotation> annotation_by_token(const std::string& client_token) const;
  std::optional<AnnotationId> entity_by_tuple(LexiconId lexicon, NodeTypeId type, LineId line,
                                              UserId annotator) const;
  /// Annotations on a line, optionally restricted to one annotator, in id order.
  std::vector<Annotation> annotations_on_line(LineId line,
                                              std::optional<UserId> annotator) const;
  std::vector<EntityAnnotation> entity_annotations(const AnnotationFilter& filter) const;
  std::vector<RelationAnnotation> relation_annotations(const AnnotationFilter& filter) const;
  std::int64_t annotation_count() const;

  CorpusCounts corpus_counts(CorpusId corpus) const;
  std::pair<std::int64_t, std::int64_t> annotation_counts_by(UserId user) const;

 protected:
  detail::Connection& conn() const { return *conn_; }

 private:
  detail::Connection* conn_;
};

/// A write batch. All changes become visible together at commit, or not at all.
/// Constraint violations throw Error(Constraint) naming the violated invariant.
class Transaction : public StoreView {
 public:
  using StoreView::StoreView;

  CorpusId insert_corpus(const std::string& name, const std::string& description);
  ChapterId insert_chapter(CorpusId corpus, const std::string& name);
  VerseId insert_verse(ChapterId chapter, const std::optional<std::string>& mark);
  LineId insert_line(const NewLine& line);
  TokenId insert_token(LineId line, std::int64_t position,
                       const std::vector<Attribute>& attributes);

  LexiconId upsert_lemma(const std::string& lemma);

  NodeTypeId insert_node_type(const std::string& label,
                              const std::optional<std::string>& description);
  RelationTypeId insert_relation_type(const std::string& label,
                                      const std::optional<std::string>& description);
  void delete_node_type(NodeTypeId id);
  void delete_relation_type(RelationTypeId id);

  UserId insert_user(const std::string& username, const std::string& email,
                     const std::string& password_hash, auth::RoleSet roles);
  void set_roles(UserId user, auth::RoleSet roles);
  void append_audit(UserId actor, UserId target, auth::RoleSet roles, std::int64_t at_unix);

  AnnotationId insert_entity_annotation(const NewEntityAnnotation& a);
  AnnotationId insert_relation_annotation(const NewRelationAnnotation& a);
  void set_curation_state(AnnotationId id, CurationState state);
  void delete_annotation(AnnotationId id);
};

/// Embedded single-file store. Readers run concurrently on snapshots; writers
/// are serialized. A Store may be shared between threads.
class Store {
 public:
  static constexpr int kSchemaVersion = 1;

  /// Opens (creating if needed) the store at `path`. An existing directory is
  /// taken to hold the store file; anything else is the store file itself.
  static Store open(const std::filesystem::path& path);

  Store(Store&&) noexcept;
  Store& operator=(Store&&) noexcept;
  ~Store();

  const std::filesystem::path& file() const;

  template <class F>
  auto read(F&& fn) const -> std::invoke_result_t<F, const StoreView&> {
    using R = std::invoke_result_t<F, const StoreView&>;
    if constexpr (std::is_void_v<R>) {
      read_impl([&](const StoreView& v) { fn(v); });
    } else {
      std::optional<R> out;
      read_impl([&](const StoreView& v) { out.emplace(fn(v)); });
      return std::move(*out);
    }
  }

  template <class F>
  auto transact(F&& fn) -> std::invoke_result_t<F, Transaction&> {
    using R = std::invoke_result_t<F, Transaction&>;
    if constexpr (std::is_void_v<R>) {
      transact_impl([&](Transaction& t) { fn(t); });
    } else {
      std::optional<R> out;
      transact_impl([&](Transaction& t) { out.emplace(fn(t)); });
      return std::move(*out);
    }
  }

 private:
  struct Impl;
  explicit Store(std::unique_ptr<Impl> impl);

  void read_impl(const std::function<void(const StoreView&)>& fn) const;
  void transact_impl(const std::function<void(Transaction&)>& fn);

  std::unique_ptr<Impl> impl_;
};

inline Store open_store(const std::filesystem::path& path) { return Store::open(path); }

/// Returns the id of `lemma`, inserting it when absent. Empty lemmas are rejected.
LexiconId upsert_lemma(Store& store, const std::string& lemma);

}  // namespace lemmagraph::store
