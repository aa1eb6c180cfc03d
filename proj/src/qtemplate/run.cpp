// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <set>

#include "lemmagraph/qengine/parser.hpp"
#include "lemmagraph/qtemplate/qtemplate.hpp"

namespace lemmagraph::qtemplate {

namespace {

std::string render_node(const graph::PropertyGraph& graph, const std::string& id) {
  const auto* node = graph.node(id);
  if (!node) return id;
  std::string out = id;
  auto lemma = node->properties.find("lemma");
  if (lemma != node->properties.end() && lemma->second.is<std::string>()) {
    out = lemma->second.as<std::string>();
  }
  out += " (";
  bool first = true;
  for (const auto& label : node->labels) {
    if (!first) out += ", ";
    out += label;
    first = false;
  }
  out += ')';
  return out;
}

std::string render_edge(const graph::PropertyGraph& graph, const std::string& id) {
  const auto* edge = graph.edge(id);
  if (!edge) return id;
  std::string out = edge->type;
  auto detail = edge->properties.find("detail");
  if (detail != edge->properties.end() && detail->second.is<std::string>()) {
    out += " (" + detail->second.as<std::string>() + ")";
  }
  return out;
}

QueryOutcome evaluate_into(const qengine::GraphIndex& index, std::string query,
                           const std::vector<std::string>& outputs) {
  QueryOutcome out;
  out.query = std::move(query);
  out.result = qengine::evaluate(index, qengine::parse_query(out.query));
  out.table = tabulate(index.graph(), out.result, outputs);
  out.subgraph = index.graph().subgraph(out.result.subgraph.nodes, out.result.subgraph.edges);
  return out;
}

}  // namespace

Table tabulate(const graph::PropertyGraph& graph, const qengine::ResultSet& result,
               const std::vector<std::string>& outputs) {
  std::vector<std::size_t> picks;
  Table table;
  if (outputs.empty()) {
    for (std::size_t i = 0; i < result.columns.size(); ++i) picks.push_back(i);
  } else {
    for (const auto& name : outputs) {
      auto it = std::find(result.columns.begin(), result.columns.end(), name);
      if (it == result.columns.end()) continue;
      auto pos = static_cast<std::size_t>(it - result.columns.begin());
      if (std::find(picks.begin(), picks.end(), pos) == picks.end()) picks.push_back(pos);
    }
  }
  for (std::size_t i : picks) table.columns.push_back(result.columns[i]);

  std::set<qengine::Row> seen;
  for (const auto& row : result.rows) {
    qengine::Row projected;
    for (std::size_t i : picks) projected.push_back(row[i]);
    if (!seen.insert(projected).second) continue;
    std::vector<std::string> cells;
    for (const auto& ref : projected) {
      cells.push_back(ref.kind == qengine::VariableKind::Node ? render_node(graph, ref.id)
                                                               : render_edge(graph, ref.id));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

QueryOutcome run(const qengine::GraphIndex& index, const ingest::QueryTemplate& tmpl,
                 const std::string& language, const std::vector<std::string>& inputs) {
  TemplateInstance instance = instantiate(tmpl, language, inputs);
  QueryOutcome out = evaluate_into(index, instance.query, tmpl.outputs);
  out.instance = std::move(instance);
  return out;
}

QueryOutcome run(const graph::PropertyGraph& graph, const ingest::QueryTemplate& tmpl,
                 const std::string& language, const std::vector<std::string>& inputs) {
  qengine::GraphIndex index(graph);
  return run(index, tmpl, language, inputs);
}

QueryOutcome run_query(const qengine::GraphIndex& index, std::string_view text) {
  return evaluate_into(index, std::string(text), {});
}

}  // namespace lemmagraph::qtemplate
