// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lemmagraph/store/store.hpp"

namespace lemmagraph::ingest {

/// Per-token linguistic attributes, kept as ordered opaque key/value pairs.
using TokenAttributes = std::vector<std::pair<std::string, std::string>>;

struct LineAnalysis {
  std::string source;
  std::string text;
  std::vector<TokenAttributes> tokens;

  bool operator==(const LineAnalysis&) const = default;
};

struct LineRecord {
  std::string text;
  std::optional<std::string> split;
  /// The `verse` key rendered as text (numbers keep their JSON spelling).
  std::optional<std::string> verse;
  std::optional<LineAnalysis> analysis;

  bool operator==(const LineRecord&) const = default;
};

/// Lines sharing a verse. Consecutive lines with equal `verse` values form one
/// group; a line without `verse` is a group of its own.
struct VerseGroup {
  std::optional<std::string> mark;
  std::vector<std::size_t> line_indices;
};

struct ChapterFile {
  std::vector<LineRecord> lines;

  std::vector<VerseGroup> verse_groups() const;
  bool operator==(const ChapterFile&) const = default;
};

enum class ParseMode {
  Strict,   // unknown keys are a validation error
  Lenient,  // unknown keys are ignored
};

/// Parses a chapter file. Malformed JSON reports the byte offset as the error
/// position; structural problems name the offending line index.
ChapterFile parse_chapter(std::string_view bytes, ParseMode mode = ParseMode::Strict);

/// Canonical JSON rendering of a chapter file; parse_chapter inverts it.
std::string serialize_chapter(const ChapterFile& chapter);

struct IngestSummary {
  std::int64_t verses = 0;
  std::int64_t lines = 0;
  std::int64_t tokens = 0;
  store::ChapterId chapter_id;

  bool operator==(const IngestSummary&) const = default;
};

/// Inserts a chapter with its verses, lines and analysis tokens in a single
/// transaction. Nothing is written when any step fails.
IngestSummary ingest_chapter(store::Store& store, store::CorpusId corpus,
                             const std::string& name, const ChapterFile& chapter);

}  // namespace lemmagraph::ingest
