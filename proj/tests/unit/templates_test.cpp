// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lemmagraph/error.hpp"
#include "lemmagraph/ingest/templates.hpp"

using namespace lemmagraph;
using namespace lemmagraph::ingest;
namespace fx = lemmagraph::testing;

namespace {

ErrorCode code_of(std::string_view text) {
  try {
    parse_templates(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::Io;
}

}  // namespace

TEST(Templates, SampleFile) {
  auto ts = parse_templates(fx::read_file(fx::data_path("sample_templates.json")));
  ASSERT_EQ(ts.size(), 1u);
  const auto& t = ts[0];
  EXPECT_EQ(t.gid, "1");
  ASSERT_EQ(t.inputs.size(), 1u);
  EXPECT_EQ(t.inputs[0].id, "p");
  EXPECT_EQ(t.inputs[0].kind, InputKind::Entity);
  EXPECT_EQ(t.outputs, (std::vector<std::string>{"p1", "r", "p2"}));
  EXPECT_EQ(t.texts.at("english"), "Who is the father of {0}?");
  EXPECT_EQ(t.groups.at("english"), "Kinship");
  EXPECT_EQ(t.cypher, "MATCH (p1)-[r:IS_FATHER_OF]->(p2) WHERE p2.lemma =~ \"{0}\" RETURN *");
}

TEST(Templates, PlaceholderBeyondInputsIsArityError) {
  std::string text = R"([{"gid":"g7","cypher":"MATCH (a) WHERE a.lemma = \"{2}\" RETURN a",
    "input":[{"id":"x","type":"entity"}],"output":["a"],
    "texts":{"en":"{0}?"},"groups":{"en":"G"}}])";
  try {
    parse_templates(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Arity);
    EXPECT_NE(std::string(e.what()).find("g7"), std::string::npos);
  }
  std::string in_text = R"([{"gid":"g8","cypher":"MATCH (a) RETURN a","input":[{"id":"x","type":"entity"}],
    "texts":{"en":"{1}?"},"groups":{"en":"G"}}])";
  EXPECT_EQ(code_of(in_text), ErrorCode::Arity);
}

TEST(Templates, MixedKindsAccepted) {
  auto ts = parse_templates(R"([{"gid":"2",
    "cypher":"MATCH (a)-[r]->(b) WHERE a.lemma = \"{0}\" AND r.detail = \"{1}\" RETURN b",
    "input":[{"id":"who","type":"entity"},{"id":"how","type":"relation_detail"}],
    "output":["b"],"texts":{"english":"Who relates to {0} as {1}?"},"groups":{"english":"Misc"}}])");
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].inputs[1].kind, InputKind::RelationDetail);
}

TEST(Templates, FindPlaceholders) {
  auto ps = find_placeholders("a {0} b {12} {x} {");
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].index, 0u);
  EXPECT_EQ(ps[0].offset, 2u);
  EXPECT_EQ(ps[0].length, 3u);
  EXPECT_EQ(ps[1].index, 12u);
  EXPECT_EQ(ps[1].offset, 8u);
}

TEST(Templates, StructuralErrors) {
  EXPECT_EQ(code_of("{}"), ErrorCode::Validation);
  EXPECT_EQ(code_of("[{"), ErrorCode::Parse);
  EXPECT_EQ(code_of(R"([{"cypher":"MATCH (a) RETURN a","texts":{"en":"q"},"groups":{"en":"g"}}])"),
            ErrorCode::Validation);
  EXPECT_EQ(code_of(R"([{"gid":"1","cypher":"MATCH (a) RETURN a","texts":{"en":"q"},"groups":{"de":"g"}}])"),
            ErrorCode::Validation);
  EXPECT_EQ(code_of(R"([{"gid":"1","cypher":"MATCH (a) RETURN a","input":[{"id":"x","type":"colour"}],
    "texts":{"en":"q"},"groups":{"en":"g"}}])"),
            ErrorCode::Validation);
}
