// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "csv.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "lemmagraph/error.hpp"
#include "lemmagraph/qengine/parser.hpp"
#include "lemmagraph/qtemplate/qtemplate.hpp"

using namespace lemmagraph;
using namespace lemmagraph::qtemplate;
using graph::PropertyGraph;
namespace fx = lemmagraph::testing;

namespace {

ingest::QueryTemplate father_of() {
  return ingest::parse_templates(fx::read_file(fx::data_path("sample_templates.json"))).at(0);
}

ingest::QueryTemplate make_template(const std::string& cypher, std::size_t inputs,
                                    std::vector<std::string> outputs = {}) {
  ingest::QueryTemplate t;
  t.gid = "t";
  t.cypher = cypher;
  t.texts = {{"english", "q"}};
  t.groups = {{"english", "g"}};
  for (std::size_t i = 0; i < inputs; ++i) t.inputs.push_back({"in" + std::to_string(i), ingest::InputKind::Entity});
  t.outputs = std::move(outputs);
  return t;
}

void add_person(PropertyGraph& g, const std::string& id) {
  g.add_node({id, {"PERSON"}, {{"lemma", id}}});
}

PropertyGraph father_graph() {
  PropertyGraph g;
  add_person(g, "A");
  add_person(g, "B");
  g.add_edge({"e1", "IS_FATHER_OF", "A", "B", {}});
  return g;
}

PropertyGraph lomaharshana_graph() {
  PropertyGraph g;
  add_person(g, "Lomaharshana");
  add_person(g, "Ugrasrava");
  g.add_edge({"e1", "IS_FATHER_OF", "Lomaharshana", "Ugrasrava", {{"detail", "by birth"}}});
  return g;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(Instantiate, FatherOfRama) {
  auto inst = instantiate(father_of(), "english", {"Rama"});
  EXPECT_EQ(inst.question, "Who is the father of Rama?");
  EXPECT_EQ(inst.query, R"(MATCH (p1)-[r:IS_FATHER_OF]->(p2) WHERE p2.lemma =~ "Rama" RETURN *)");
  EXPECT_EQ(inst.gid, "1");
  EXPECT_EQ(inst.inputs, (std::vector<std::string>{"Rama"}));
}

TEST(Instantiate, GuardsAndArity) {
  auto t = father_of();
  EXPECT_EQ(code_of([&] { instantiate(t, "english", {"a\"b"}); }), ErrorCode::RejectedInput);
  EXPECT_EQ(code_of([&] { instantiate(t, "english", {"a`b"}); }), ErrorCode::RejectedInput);
  EXPECT_EQ(code_of([&] { instantiate(t, "english", {"x{0}"}); }), ErrorCode::RejectedInput);
  EXPECT_EQ(code_of([&] { instantiate(t, "english", {}); }), ErrorCode::Arity);
  EXPECT_EQ(code_of([&] { instantiate(t, "english", {"a", "b"}); }), ErrorCode::Arity);
  EXPECT_EQ(code_of([&] { instantiate(t, "klingon", {"a"}); }), ErrorCode::Validation);
  EXPECT_EQ(code_of([&] { instantiate(t, "english", {""}); }), ErrorCode::Validation);
}

TEST(Instantiate, BrokenTemplateNamesGid) {
  auto t = make_template("MATCH (a WHERE a.lemma = \"{0}\" RETURN a", 1);
  t.gid = "broken-7";
  try {
    instantiate(t, "english", {"x"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TemplateDefinition);
    EXPECT_NE(std::string(e.what()).find("broken-7"), std::string::npos);
  }
}

TEST(Instantiate, RegexMetacharactersMatchLiterally) {
  PropertyGraph g;
  add_person(g, "Dasharatha");
  for (auto id : {"C++", "C", "CC", "C+"}) add_person(g, id);
  g.add_edge({"e1", "IS_FATHER_OF", "Dasharatha", "C++", {}});
  g.add_edge({"e2", "IS_FATHER_OF", "Dasharatha", "CC", {}});
  g.add_edge({"e3", "IS_FATHER_OF", "Dasharatha", "C", {}});
  auto out = run(g, father_of(), "english", {"C++"});
  ASSERT_EQ(out.result.rows.size(), 1u);
  EXPECT_EQ(out.result.rows[0][2].id, "C++");
}

TEST(Instantiate, RawInputIsAPattern) {
  auto t = father_of();
  t.inputs[0].raw = true;
  auto out = run(father_graph(), t, "english", {"[AB]"});
  EXPECT_EQ(out.result.rows.size(), 1u);
}

TEST(Instantiate, BarePlaceholderQuotedWhenNeeded) {
  auto t = make_template("MATCH (a:{0}) RETURN a", 1);
  EXPECT_EQ(instantiate(t, "english", {"PERSON"}).query, "MATCH (a:PERSON) RETURN a");
  EXPECT_EQ(instantiate(t, "english", {"TWO WORDS"}).query, "MATCH (a:`TWO WORDS`) RETURN a");
  EXPECT_EQ(instantiate(t, "english", {"match"}).query, "MATCH (a:`match`) RETURN a");
}

TEST(Instantiate, EscapedInputAlwaysMatchesItself) {
  std::mt19937 rng(17);
  const std::string alphabet = "abcXYZ09 .*+?^$|()[]{}\\/-_:;,!&%#@~<>=\t\xc3\xa1";
  auto t = father_of();
  for (int i = 0; i < 300; ++i) {
    std::string input;
    std::size_t len = 1 + rng() % 8;
    while (input.size() < len) input += alphabet[rng() % alphabet.size()];
    if (!ingest::find_placeholders(input).empty()) continue;
    PropertyGraph g;
    add_person(g, "parent");
    g.add_node({"child", {"PERSON"}, {{"lemma", input}}});
    g.add_node({"other", {"PERSON"}, {{"lemma", input + "x"}}});
    g.add_edge({"e1", "IS_FATHER_OF", "parent", "child", {}});
    g.add_edge({"e2", "IS_FATHER_OF", "parent", "other", {}});
    QueryOutcome out;
    ASSERT_NO_THROW(out = run(g, t, "english", {input})) << "input: " << input;
    ASSERT_EQ(out.result.rows.size(), 1u) << "input: " << input << " query: " << out.query;
    EXPECT_EQ(out.result.rows[0][2].id, "child");
  }
}

TEST(Run, FatherOfEndToEnd) {
  auto out = run(father_graph(), father_of(), "english", {"B"});
  EXPECT_EQ(out.table.columns, (std::vector<std::string>{"p1", "r", "p2"}));
  ASSERT_EQ(out.table.rows.size(), 1u);
  EXPECT_EQ(out.table.rows[0], (std::vector<std::string>{"A (PERSON)", "IS_FATHER_OF", "B (PERSON)"}));
  EXPECT_EQ(out.subgraph.node_count(), 2u);
  EXPECT_EQ(out.subgraph.edge_count(), 1u);
  ASSERT_TRUE(out.instance.has_value());
}

TEST(Run, NoMatchIsEmpty) {
  auto out = run(father_graph(), father_of(), "english", {"Nobody"});
  EXPECT_TRUE(out.table.rows.empty());
  EXPECT_TRUE(out.subgraph.empty());
  EXPECT_EQ(out.subgraph.edge_count(), 0u);
}

TEST(Run, OutputsProjectColumns) {
  auto t = father_of();
  t.outputs = {"p1"};
  auto out = run(father_graph(), t, "english", {"B"});
  EXPECT_EQ(out.table.columns, (std::vector<std::string>{"p1"}));
  ASSERT_EQ(out.table.rows.size(), 1u);
  EXPECT_EQ(out.table.rows[0], (std::vector<std::string>{"A (PERSON)"}));
}

TEST(Run, ProjectionDeduplicates) {
  PropertyGraph g;
  add_person(g, "A");
  add_person(g, "B");
  add_person(g, "C");
  g.add_edge({"e1", "IS_FATHER_OF", "A", "B", {}});
  g.add_edge({"e2", "IS_FATHER_OF", "A", "C", {}});
  auto t = father_of();
  t.outputs = {"p1"};
  t.inputs[0].raw = true;
  auto out = run(g, t, "english", {".*"});
  EXPECT_EQ(out.result.rows.size(), 2u);
  EXPECT_EQ(out.table.rows.size(), 1u);
}

TEST(Run, IsPure) {
  auto g = father_graph();
  auto before = g;
  auto a = run(g, father_of(), "english", {"B"});
  auto b = run(g, father_of(), "english", {"B"});
  EXPECT_EQ(g, before);
  EXPECT_EQ(a.table, b.table);
  EXPECT_EQ(a.result, b.result);
  EXPECT_EQ(export_result(a, ExportFormat::Json), export_result(b, ExportFormat::Json));
}

TEST(Export, CsvForOneRow) {
  auto out = run(lomaharshana_graph(), father_of(), "english", {"Ugrasrava"});
  auto csv = export_result(out, ExportFormat::Csv);
  EXPECT_EQ(csv,
            "p1,r,p2\r\n"
            "Lomaharshana (PERSON),IS_FATHER_OF (by birth),Ugrasrava (PERSON)\r\n");
}

TEST(Export, EmptyResultIsHeaderOnly) {
  auto out = run(lomaharshana_graph(), father_of(), "english", {"Nobody"});
  EXPECT_EQ(export_result(out, ExportFormat::Csv), "p1,r,p2\r\n");
  auto j = nlohmann::json::parse(export_result(out, ExportFormat::Json));
  EXPECT_TRUE(j["rows"].empty());
  EXPECT_TRUE(j["subgraph"]["nodes"].empty());
  auto text = export_result(out, ExportFormat::Text);
  EXPECT_EQ(text.substr(0, text.find('\n')), "p1  r  p2");
}

TEST(Export, JsonShape) {
  auto out = run(lomaharshana_graph(), father_of(), "english", {"Ugrasrava"});
  auto j = nlohmann::json::parse(export_result(out, ExportFormat::Json));
  EXPECT_EQ(j["columns"], nlohmann::json::array({"p1", "r", "p2"}));
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["subgraph"]["nodes"].size(), 2u);
  EXPECT_EQ(j["subgraph"]["edges"][0]["source"], "Lomaharshana");
  EXPECT_EQ(j["subgraph"]["edges"][0]["properties"]["detail"], "by birth");
}

TEST(Export, TextAligned) {
  auto out = run(lomaharshana_graph(), father_of(), "english", {"Ugrasrava"});
  auto text = export_result(out, ExportFormat::Text);
  EXPECT_EQ(text,
            "p1                     r                        p2\n"
            "---------------------  -----------------------  ------------------\n"
            "Lomaharshana (PERSON)  IS_FATHER_OF (by birth)  Ugrasrava (PERSON)\n");
}

TEST(Export, CsvRoundTripsThroughIndependentReader) {
  PropertyGraph g;
  const std::vector<std::string> awkward = {"plain", "with,comma", "with \"quote\"", "multi\nline", " padded ",
                                            "Nárad"};
  for (std::size_t i = 0; i < awkward.size(); ++i) {
    g.add_node({"n" + std::to_string(i), {"PERSON"}, {{"lemma", awkward[i]}}});
  }
  auto out = run_query(qengine::GraphIndex(g), "MATCH (n:PERSON) RETURN n");
  auto records = fx::parse_csv(export_result(out, ExportFormat::Csv));
  ASSERT_EQ(records.size(), awkward.size() + 1);
  EXPECT_EQ(records[0], (std::vector<std::string>{"n"}));
  for (std::size_t i = 0; i < awkward.size(); ++i) {
    EXPECT_EQ(records[i + 1], (std::vector<std::string>{awkward[i] + " (PERSON)"}));
  }
  EXPECT_EQ(records[1 + 0], std::vector<std::string>{out.table.rows[0][0]});
}

TEST(Export, Deterministic) {
  fx::Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    auto g = fx::random_graph(rng, 15, 30);
    qengine::GraphIndex index(g);
    auto a = run_query(index, "MATCH (a)-[r]->(b) RETURN *");
    auto b = run_query(index, "MATCH (a)-[r]->(b) RETURN *");
    for (auto f : {ExportFormat::Csv, ExportFormat::Json, ExportFormat::Text}) {
      EXPECT_EQ(export_result(a, f), export_result(b, f));
    }
  }
}

TEST(Export, FormatNames) {
  EXPECT_EQ(export_format_from_string("csv"), ExportFormat::Csv);
  EXPECT_EQ(export_format_from_string("txt"), ExportFormat::Text);
  EXPECT_EQ(export_format_from_string("text"), ExportFormat::Text);
  EXPECT_FALSE(export_format_from_string("xml").has_value());
  EXPECT_EQ(content_type(ExportFormat::Csv).substr(0, 8), "text/csv");
}
