// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "generators.hpp"
#include "lemmagraph/error.hpp"
#include "lemmagraph/qengine/evaluator.hpp"
#include "lemmagraph/qengine/parser.hpp"
#include "oracle.hpp"

using namespace lemmagraph;
using namespace lemmagraph::qengine;
using graph::PropertyGraph;
namespace fx = lemmagraph::testing;

namespace {

const char* kFatherOf = R"(MATCH (p1)-[r:IS_FATHER_OF]->(p2) WHERE p2.lemma =~ "B" RETURN *)";

PropertyGraph father_graph() {
  PropertyGraph g;
  g.add_node({"A", {"PERSON"}, {{"lemma", "A"}}});
  g.add_node({"B", {"PERSON"}, {{"lemma", "B"}}});
  g.add_edge({"e1", "IS_FATHER_OF", "A", "B", {}});
  return g;
}

std::vector<std::vector<std::string>> ids(const ResultSet& r) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : r.rows) {
    std::vector<std::string> line;
    for (const auto& ref : row) line.push_back(ref.id);
    out.push_back(std::move(line));
  }
  return out;
}

void expect_matches_oracle(const PropertyGraph& g, const QueryAst& ast, const std::string& context) {
  auto got = evaluate(g, ast);
  auto want = fx::brute_force_oracle(g, ast);
  ASSERT_EQ(got.columns, want.columns) << context;
  ASSERT_EQ(ids(got), want.rows) << context;
  ASSERT_EQ(got.subgraph.nodes, want.nodes) << context;
  ASSERT_EQ(got.subgraph.edges, want.edges) << context;
}

}  // namespace

TEST(Evaluator, FatherOfSingleRow) {
  auto r = evaluate(father_graph(), parse_query(kFatherOf));
  EXPECT_EQ(r.columns, (std::vector<std::string>{"p1", "r", "p2"}));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0][0], (ElementRef{VariableKind::Node, "A"}));
  EXPECT_EQ(r.rows[0][1], (ElementRef{VariableKind::Edge, "e1"}));
  EXPECT_EQ(r.rows[0][2], (ElementRef{VariableKind::Node, "B"}));
  EXPECT_EQ(r.subgraph, (Subgraph{{"A", "B"}, {"e1"}}));
}

TEST(Evaluator, EmptyGraph) {
  auto r = evaluate(PropertyGraph{}, parse_query(kFatherOf));
  EXPECT_TRUE(r.rows.empty());
  EXPECT_TRUE(r.subgraph.nodes.empty());
  EXPECT_TRUE(r.subgraph.edges.empty());
}

TEST(Evaluator, LimitTruncates) {
  PropertyGraph g;
  for (int i = 0; i < 5; ++i) g.add_node({"p" + std::to_string(i), {"PERSON"}, {}});
  g.add_node({"x", {"PLACE"}, {}});
  auto r = evaluate(g, parse_query("MATCH (n:PERSON) RETURN n LIMIT 2"));
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0][0].id, "p0");
  EXPECT_EQ(r.rows[1][0].id, "p1");
  EXPECT_EQ(r.subgraph.nodes, (std::set<std::string>{"p0", "p1"}));
  EXPECT_TRUE(evaluate(g, parse_query("MATCH (n:PERSON) RETURN n LIMIT 0")).rows.empty());
}

TEST(Evaluator, SingleNodePatternYieldsEveryNode) {
  fx::Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    auto g = fx::random_graph(rng, 30, 10);
    EXPECT_EQ(evaluate(g, parse_query("MATCH (n) RETURN n")).rows.size(), g.node_count());
  }
}

TEST(Evaluator, ProjectionIsDistinct) {
  PropertyGraph g;
  g.add_node({"a", {"X"}, {}});
  for (int i = 0; i < 3; ++i) {
    g.add_node({"b" + std::to_string(i), {"X"}, {}});
    g.add_edge({"e" + std::to_string(i), "T", "a", "b" + std::to_string(i), {}});
  }
  EXPECT_EQ(evaluate(g, parse_query("MATCH (s)-[:T]->(t) RETURN s")).rows.size(), 1u);
  EXPECT_EQ(evaluate(g, parse_query("MATCH (s)-[:T]->(t) RETURN t")).rows.size(), 3u);
}

TEST(Evaluator, UndirectedAndSelfLoops) {
  PropertyGraph g;
  g.add_node({"a", {"X"}, {}});
  g.add_node({"b", {"X"}, {}});
  g.add_edge({"e1", "T", "a", "b", {}});
  g.add_edge({"loop", "T", "a", "a", {}});
  auto undirected = evaluate(g, parse_query("MATCH (x)-[r]-(y) RETURN x, r, y"));
  EXPECT_EQ(undirected.rows.size(), 3u);  // a-e1-b, b-e1-a, a-loop-a
  auto left = evaluate(g, parse_query("MATCH (x)<-[r]-(y) WHERE x.lemma = 1 OR NOT x.lemma = 1 RETURN x, y"));
  EXPECT_EQ(left.rows.size(), 2u);
}

TEST(Evaluator, MissingPropertyComparisonsAreFalse) {
  PropertyGraph g;
  g.add_node({"a", {"X"}, {{"k", "v"}}});
  g.add_node({"b", {"X"}, {}});
  EXPECT_EQ(evaluate(g, parse_query(R"(MATCH (n) WHERE n.k <> "w" RETURN n)")).rows.size(), 1u);
  EXPECT_EQ(evaluate(g, parse_query(R"(MATCH (n) WHERE NOT n.k = "v" RETURN n)")).rows.size(), 1u);
  EXPECT_EQ(evaluate(g, parse_query(R"(MATCH (n) WHERE n.k =~ ".*" RETURN n)")).rows.size(), 1u);
}

TEST(Evaluator, NumericComparisonAcrossIntAndFloat) {
  PropertyGraph g;
  g.add_node({"a", {"X"}, {{"w", 2}}});
  g.add_node({"b", {"X"}, {{"w", 2.5}}});
  auto r = evaluate(g, parse_query("MATCH (n) WHERE n.w = 2.0 RETURN n"));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0][0].id, "a");
}

TEST(Evaluator, InvalidRegexIsEvaluationError) {
  try {
    evaluate(father_graph(), parse_query(R"(MATCH (n) WHERE n.lemma =~ "(unclosed" RETURN n)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Evaluation);
    EXPECT_NE(std::string(e.what()).find("(unclosed"), std::string::npos);
  }
}

TEST(Evaluator, MatchesOracleOnRandomCases) {
  fx::Rng rng(20240501);
  for (int i = 0; i < 300; ++i) {
    auto g = fx::random_graph(rng, 30, 60);
    auto ast = fx::random_query(rng);
    expect_matches_oracle(g, ast, "case " + std::to_string(i) + ": " + print_query(ast));
    if (HasFatalFailure()) return;
  }
}

TEST(Evaluator, SubgraphIsClosedAndCoversRows) {
  fx::Rng rng(77);
  for (int i = 0; i < 100; ++i) {
    auto g = fx::random_graph(rng, 20, 40);
    auto r = evaluate(g, fx::random_query(rng));
    std::set<std::string> nodes, edges;
    for (const auto& row : r.rows) {
      for (const auto& ref : row) (ref.kind == VariableKind::Node ? nodes : edges).insert(ref.id);
    }
    for (const auto& e : edges) {
      nodes.insert(g.edge(e)->source);
      nodes.insert(g.edge(e)->target);
    }
    EXPECT_EQ(r.subgraph.nodes, nodes);
    EXPECT_EQ(r.subgraph.edges, edges);
  }
}

TEST(Evaluator, LimitIsPrefixOfUnlimited) {
  fx::Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    auto g = fx::random_graph(rng, 20, 40);
    auto ast = fx::random_query(rng);
    ast.limit.reset();
    auto full = evaluate(g, ast);
    for (std::int64_t k : {0, 1, 3}) {
      ast.limit = k;
      auto cut = evaluate(g, ast);
      std::size_t expect = std::min<std::size_t>(full.rows.size(), static_cast<std::size_t>(k));
      ASSERT_EQ(cut.rows.size(), expect);
      EXPECT_TRUE(std::equal(cut.rows.begin(), cut.rows.end(), full.rows.begin()));
    }
  }
}

TEST(Evaluator, IndexReuseGivesSameAnswers) {
  fx::Rng rng(5);
  auto g = fx::random_graph(rng, 25, 50);
  GraphIndex index(g);
  for (int i = 0; i < 50; ++i) {
    auto ast = fx::random_query(rng);
    EXPECT_EQ(evaluate(index, ast), evaluate(g, ast));
  }
}
