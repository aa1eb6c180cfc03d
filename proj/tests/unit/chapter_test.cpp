// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "lemmagraph/error.hpp"
#include "lemmagraph/ingest/chapter.hpp"

using namespace lemmagraph;
using namespace lemmagraph::ingest;
namespace fx = lemmagraph::testing;
using json = nlohmann::ordered_json;

namespace {

std::string lines_file(int n, int bad_index = -1) {
  json doc = json::array();
  for (int i = 0; i < n; ++i) {
    if (i == bad_index) {
      doc.push_back({{"verse", i + 1}});
    } else {
      doc.push_back({{"verse", i + 1}, {"text", "line " + std::to_string(i)}});
    }
  }
  return doc.dump();
}

store::CorpusId make_corpus(store::Store& s) {
  return s.transact([](store::Transaction& tx) { return tx.insert_corpus("c", ""); });
}

std::int64_t row_total(store::Store& s, store::CorpusId corpus) {
  return s.read([&](const store::StoreView& v) {
    return static_cast<std::int64_t>(v.chapters(corpus).size()) + v.line_count(corpus);
  });
}

}  // namespace

TEST(ChapterParse, SampleFile) {
  auto ch = parse_chapter(fx::read_file(fx::data_path("sample_chapter.json")));
  ASSERT_EQ(ch.lines.size(), 1u);
  const auto& line = ch.lines[0];
  EXPECT_EQ(line.text, "To sainted Nárad, prince of those");
  EXPECT_EQ(line.verse, "1");
  EXPECT_EQ(line.split, "");
  ASSERT_TRUE(line.analysis.has_value());
  EXPECT_EQ(line.analysis->source, "spacy");
  ASSERT_EQ(line.analysis->tokens.size(), 2u);
  TokenAttributes first{{"Word", "Nárad"}, {"Lemma", "Nárad"}, {"Tag", "NNP"}, {"POS", "PROPN"}};
  TokenAttributes second{{"Word", "prince"}, {"Lemma", "prince"}, {"Tag", "NN"}, {"POS", "NOUN"}};
  EXPECT_EQ(line.analysis->tokens[0], first);
  EXPECT_EQ(line.analysis->tokens[1], second);
  auto groups = ch.verse_groups();
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].mark, "1");
}

TEST(ChapterParse, EmptyListRejected) {
  try {
    parse_chapter("[]");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Validation);
  }
}

TEST(ChapterParse, ConsecutiveVerseValuesGroup) {
  auto ch = parse_chapter(R"([{"verse":1,"text":"a"},{"verse":1,"text":"b"},{"verse":2,"text":"c"}])");
  auto groups = ch.verse_groups();
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].line_indices.size(), 2u);
  EXPECT_EQ(groups[1].line_indices.size(), 1u);
}

TEST(ChapterParse, LinesWithoutVerseAreTheirOwnGroup) {
  auto ch = parse_chapter(R"([{"text":"a"},{"text":"b"},{"verse":"x","text":"c"},{"verse":"x","text":"d"}])");
  auto groups = ch.verse_groups();
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_FALSE(groups[0].mark.has_value());
  EXPECT_EQ(groups[2].line_indices, (std::vector<std::size_t>{2, 3}));
}

TEST(ChapterParse, MalformedJsonCarriesByteOffset) {
  std::string text = R"([{"text": "a",}])";
  try {
    parse_chapter(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    ASSERT_TRUE(e.position().has_value());
    // The stray '}' after the trailing comma.
    EXPECT_EQ(text[*e.position() - 1], '}');
  }
}

TEST(ChapterParse, MissingTextNamesLine) {
  try {
    parse_chapter(R"([{"text":"a"},{"text":"b"},{"verse":3}])");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Validation);
    EXPECT_EQ(e.position(), std::optional<std::size_t>(2));
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ChapterParse, StrictRejectsUnknownKeysLenientIgnores) {
  std::string text = R"([{"text":"a","colour":"red"}])";
  EXPECT_THROW(parse_chapter(text), Error);
  EXPECT_EQ(parse_chapter(text, ParseMode::Lenient).lines.size(), 1u);
}

TEST(ChapterParse, SerializeRoundTrip) {
  auto ch = parse_chapter(fx::read_file(fx::data_path("sample_chapter.json")));
  EXPECT_EQ(parse_chapter(serialize_chapter(ch)), ch);
  auto more = parse_chapter(R"([{"verse":"1a","text":"x","split":"x y"},{"text":"é \"q\""}])");
  EXPECT_EQ(parse_chapter(serialize_chapter(more)), more);
}

TEST(ChapterIngest, SampleCounts) {
  fx::TempDir dir;
  auto s = store::Store::open(dir.path());
  auto corpus = make_corpus(s);
  auto ch = parse_chapter(fx::read_file(fx::data_path("sample_chapter.json")));
  auto summary = ingest_chapter(s, corpus, "bala", ch);
  EXPECT_EQ(summary.verses, 1);
  EXPECT_EQ(summary.lines, 1);
  EXPECT_EQ(summary.tokens, 2);
  auto line = s.read([&](const store::StoreView& v) { return v.chapter_lines(summary.chapter_id).front(); });
  auto tokens = s.read([&](const store::StoreView& v) { return v.tokens(line.id); });
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].attribute("Lemma"), "Nárad");
  EXPECT_EQ(tokens[1].attribute("POS"), "NOUN");
  EXPECT_EQ(line.analysis_source, "spacy");
}

TEST(ChapterIngest, DuplicateNameRejectedCountsUnchanged) {
  fx::TempDir dir;
  auto s = store::Store::open(dir.path());
  auto corpus = make_corpus(s);
  auto ch = parse_chapter(fx::read_file(fx::data_path("sample_chapter.json")));
  ingest_chapter(s, corpus, "bala", ch);
  auto before = row_total(s, corpus);
  try {
    ingest_chapter(s, corpus, "bala", ch);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Duplicate);
  }
  EXPECT_EQ(row_total(s, corpus), before);
}

TEST(ChapterIngest, HundredLinesGetOrdinals) {
  fx::TempDir dir;
  auto s = store::Store::open(dir.path());
  auto corpus = make_corpus(s);
  auto summary = ingest_chapter(s, corpus, "long", parse_chapter(lines_file(100)));
  EXPECT_EQ(summary.verses, 100);
  EXPECT_EQ(summary.lines, 100);
  EXPECT_EQ(summary.tokens, 0);
  auto lines = s.read([&](const store::StoreView& v) { return v.chapter_lines(summary.chapter_id); });
  ASSERT_EQ(lines.size(), 100u);
  for (std::size_t i = 0; i < lines.size(); ++i) EXPECT_EQ(lines[i].ordinal, static_cast<std::int64_t>(i));
}

TEST(ChapterIngest, InvalidLineInsertsNothing) {
  fx::TempDir dir;
  auto s = store::Store::open(dir.path());
  auto corpus = make_corpus(s);
  try {
    ingest_chapter(s, corpus, "broken", parse_chapter(lines_file(80, 56), ParseMode::Lenient));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Validation);
    EXPECT_EQ(e.position(), std::optional<std::size_t>(56));
  }
  EXPECT_EQ(row_total(s, corpus), 0);

  // A record that passes parsing but fails in the store also leaves nothing.
  ChapterFile ch = parse_chapter(lines_file(80));
  ch.lines[56].text.clear();
  EXPECT_THROW(ingest_chapter(s, corpus, "broken", ch), Error);
  EXPECT_EQ(row_total(s, corpus), 0);
}
