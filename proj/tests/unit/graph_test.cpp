// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "lemmagraph/annotate/annotate.hpp"
#include "lemmagraph/error.hpp"
#include "lemmagraph/graph/builder.hpp"

using namespace lemmagraph;
using namespace lemmagraph::graph;
using auth::Role;
using store::CurationState;
using store::OntologyKind;
namespace fx = lemmagraph::testing;

namespace {

std::vector<store::LineId> add_lines(fx::SeededStore& s, int n) {
  std::string doc = "[";
  for (int i = 0; i < n; ++i) doc += std::string(i ? "," : "") + R"({"text":"line )" + std::to_string(i) + "\"}";
  doc += "]";
  auto summary = ingest::ingest_chapter(s.store, s.corpus, "extra", ingest::parse_chapter(doc));
  auto lines = s.store.read([&](const store::StoreView& v) { return v.chapter_lines(summary.chapter_id); });
  std::vector<store::LineId> ids;
  for (const auto& l : lines) ids.push_back(l.id);
  return ids;
}

void define_types(fx::SeededStore& s) {
  for (auto label : {"PERSON", "SAGE"}) annotate::ontology_add(s.store, s.admin, OntologyKind::Node, label);
  for (auto label : {"IS_SON_OF", "IS_FATHER_OF"}) {
    annotate::ontology_add(s.store, s.admin, OntologyKind::Relation, label);
  }
}

std::set<std::string> labels_of(const PropertyGraph& g, const std::string& id) {
  const auto* n = g.node(id);
  return n ? n->labels : std::set<std::string>{};
}

}  // namespace

TEST(GraphBuild, EmptyStoreEmptyGraph) {
  fx::TempDir dir;
  auto s = store::Store::open(dir.path());
  auto g = build_graph(s);
  EXPECT_EQ(g.node_count(), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_TRUE(g.built_at.has_value());
  EXPECT_EQ(g.policy, BuildPolicy{});
}

TEST(GraphBuild, SonOfExample) {
  fx::SeededStore s;
  define_types(s);
  annotate::annotate_entity(s.store, s.annotator, {"e1", s.line, "Ugrasrava", "PERSON"});
  annotate::annotate_entity(s.store, s.annotator, {"e2", s.line, "Lomaharshana", "PERSON"});
  annotate::annotate_relation(s.store, s.annotator,
                              {"r1", s.line, "Ugrasrava", "Lomaharshana", "IS_SON_OF", std::nullopt});
  auto g = build_graph(s.store);
  ASSERT_EQ(g.node_count(), 2u);
  ASSERT_EQ(g.edge_count(), 1u);
  const auto& e = g.edges().begin()->second;
  EXPECT_EQ(e.type, "IS_SON_OF");
  EXPECT_EQ(e.source, "Ugrasrava");
  EXPECT_EQ(e.target, "Lomaharshana");
  EXPECT_EQ(e.properties.at("line_ids"), PropertyValue(PropertyValue::List{PropertyValue(s.line.value)}));
  const auto* n = g.node("Ugrasrava");
  ASSERT_NE(n, nullptr);
  EXPECT_EQ(n->properties.at("lemma"), PropertyValue("Ugrasrava"));
  EXPECT_EQ(n->properties.at("annotator_count"), PropertyValue(1));
}

TEST(GraphBuild, LabelUnionAcrossLines) {
  fx::SeededStore s;
  define_types(s);
  auto lines = add_lines(s, 2);
  annotate::annotate_entity(s.store, s.annotator, {"e1", lines[0], "Vasishtha", "PERSON"});
  annotate::annotate_entity(s.store, s.annotator, {"e2", lines[1], "Vasishtha", "SAGE"});
  auto g = build_graph(s.store);
  ASSERT_EQ(g.node_count(), 1u);
  EXPECT_EQ(labels_of(g, "Vasishtha"), (std::set<std::string>{"PERSON", "SAGE"}));
}

TEST(GraphBuild, RelationOnlyLemmaIsUntyped) {
  fx::SeededStore s;
  define_types(s);
  annotate::annotate_entity(s.store, s.annotator, {"e1", s.line, "Rama", "PERSON"});
  annotate::annotate_relation(s.store, s.annotator, {"r1", s.line, "Rama", "Dasharatha", "IS_SON_OF", std::nullopt});
  auto g = build_graph(s.store);
  EXPECT_EQ(labels_of(g, "Dasharatha"), (std::set<std::string>{std::string(kUntypedLabel)}));
  EXPECT_EQ(g.node("Dasharatha")->properties.at("annotator_count"), PropertyValue(0));
}

TEST(GraphBuild, ParallelEdgesByDetailAndSupportMerging) {
  fx::SeededStore s;
  define_types(s);
  auto lines = add_lines(s, 2);
  auto curator = fx::make_user(s.store, "cora", {Role::Curator});
  annotate::annotate_relation(s.store, s.annotator, {"a", lines[0], "A", "B", "IS_SON_OF", std::nullopt});
  annotate::annotate_relation(s.store, curator, {"b", lines[1], "A", "B", "IS_SON_OF", std::nullopt});
  annotate::annotate_relation(s.store, curator, {"c", lines[1], "A", "B", "IS_SON_OF", std::string("adopted")});
  auto g = build_graph(s.store);
  ASSERT_EQ(g.edge_count(), 2u);
  std::size_t merged = 0;
  for (const auto& [_, e] : g.edges()) {
    if (!e.properties.count("detail")) {
      ++merged;
      EXPECT_EQ(e.properties.at("line_ids").as<PropertyValue::List>().size(), 2u);
    }
  }
  EXPECT_EQ(merged, 1u);
}

TEST(GraphBuild, DiscardedExcludedAndPolicyValidated) {
  fx::SeededStore s;
  define_types(s);
  auto curator = fx::make_user(s.store, "cora", {Role::Curator});
  auto rel = annotate::annotate_relation(s.store, s.annotator, {"r", s.line, "A", "B", "IS_SON_OF", std::nullopt});
  annotate::curate(s.store, curator, rel, annotate::Decision::Discard);
  EXPECT_EQ(build_graph(s.store).edge_count(), 0u);

  BuildPolicy bad;
  bad.include_states = {CurationState::Discarded};
  EXPECT_THROW(build_graph(s.store, bad), Error);
  bad.include_states = {};
  EXPECT_THROW(build_graph(s.store, bad), Error);

  BuildPolicy kept_only;
  kept_only.include_states = {CurationState::Kept};
  annotate::annotate_entity(s.store, s.annotator, {"e", s.line, "C", "PERSON"});
  EXPECT_EQ(build_graph(s.store, kept_only).node_count(), 0u);
}

TEST(GraphBuild, CorpusSelection) {
  fx::SeededStore s;
  define_types(s);
  auto other = s.store.transact([](store::Transaction& tx) { return tx.insert_corpus("other", ""); });
  auto summary = ingest::ingest_chapter(s.store, other, "x", ingest::parse_chapter(R"([{"text":"t"}])"));
  auto other_line = s.store.read([&](const store::StoreView& v) { return v.chapter_lines(summary.chapter_id)[0].id; });
  annotate::annotate_entity(s.store, s.annotator, {"a", s.line, "InFirst", "PERSON"});
  annotate::annotate_entity(s.store, s.annotator, {"b", other_line, "InOther", "PERSON"});
  BuildPolicy p;
  p.corpora = {other};
  auto g = build_graph(s.store, p);
  ASSERT_EQ(g.node_count(), 1u);
  EXPECT_NE(g.node("InOther"), nullptr);
}

TEST(GraphBuild, DiscardingNeverGrowsTheGraph) {
  fx::SeededStore s;
  define_types(s);
  auto curator = fx::make_user(s.store, "cora", {Role::Curator});
  auto lines = add_lines(s, 4);
  std::mt19937 rng(5);
  std::vector<store::AnnotationId> ids;
  const char* lemmas[] = {"A", "B", "C", "D", "E"};
  for (int i = 0; i < 40; ++i) {
    auto line = lines[rng() % lines.size()];
    std::string tok = "t" + std::to_string(i);
    if (rng() % 2) {
      ids.push_back(annotate::annotate_entity(s.store, s.annotator,
                                              {tok, line, lemmas[rng() % 5], rng() % 2 ? "PERSON" : "SAGE"}));
    } else {
      ids.push_back(annotate::annotate_relation(
          s.store, s.annotator,
          {tok, line, lemmas[rng() % 5], lemmas[rng() % 5], rng() % 2 ? "IS_SON_OF" : "IS_FATHER_OF",
           std::nullopt}));
    }
  }
  std::shuffle(ids.begin(), ids.end(), rng);
  auto prev = build_graph(s.store);
  for (auto id : ids) {
    annotate::curate(s.store, curator, id, annotate::Decision::Discard);
    auto g = build_graph(s.store);
    EXPECT_LE(g.node_count(), prev.node_count());
    EXPECT_LE(g.edge_count(), prev.edge_count());
    for (const auto& [nid, n] : g.nodes()) {
      ASSERT_NE(prev.node(nid), nullptr);
      for (const auto& l : n.labels) {
        EXPECT_TRUE(l == kUntypedLabel || prev.node(nid)->labels.count(l)) << nid << " gained " << l;
      }
    }
    prev = std::move(g);
  }
  EXPECT_TRUE(prev.empty());
}

TEST(GraphBuild, IndependentOfAnnotationOrder) {
  struct Op {
    bool relation;
    int line;
    std::string a, b, type;
  };
  std::mt19937 rng(9);
  std::vector<Op> ops;
  const char* lemmas[] = {"A", "B", "C", "D"};
  for (int i = 0; i < 25; ++i) {
    if (rng() % 2) {
      ops.push_back({false, static_cast<int>(rng() % 3), lemmas[rng() % 4], "", rng() % 2 ? "PERSON" : "SAGE"});
    } else {
      ops.push_back({true, static_cast<int>(rng() % 3), lemmas[rng() % 4], lemmas[rng() % 4],
                     rng() % 2 ? "IS_SON_OF" : "IS_FATHER_OF"});
    }
  }
  auto build_in_order = [&](std::vector<Op> order) {
    fx::SeededStore s;
    define_types(s);
    auto lines = add_lines(s, 3);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& op = order[i];
      std::string tok = "t" + std::to_string(i);
      if (op.relation) {
        annotate::annotate_relation(s.store, s.annotator, {tok, lines[op.line], op.a, op.b, op.type, std::nullopt});
      } else {
        annotate::annotate_entity(s.store, s.annotator, {tok, lines[op.line], op.a, op.type});
      }
    }
    return build_graph(s.store);
  };
  auto reference = build_in_order(ops);
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(ops.begin(), ops.end(), rng);
    EXPECT_EQ(build_in_order(ops), reference);
  }
}

TEST(PropertyGraph, Invariants) {
  PropertyGraph g;
  g.add_node({"a", {"X"}, {}});
  EXPECT_THROW(g.add_node({"a", {"X"}, {}}), Error);
  EXPECT_THROW(g.add_node({"b", {}, {}}), Error);
  try {
    g.add_edge({"e", "T", "a", "missing", {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DanglingEdge);
  }
  g.add_node({"b", {"Y"}, {}});
  g.add_edge({"e", "T", "a", "b", {}});
  auto sub = g.subgraph({}, {"e"});
  EXPECT_EQ(sub.node_count(), 2u);
  EXPECT_EQ(sub.edge_count(), 1u);
}
