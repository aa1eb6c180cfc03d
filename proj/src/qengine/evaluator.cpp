// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/qengine/evaluator.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <regex>

#include "lemmagraph/error.hpp"

namespace lemmagraph::qengine {

using graph::PropertyMap;
using graph::PropertyValue;

GraphIndex::GraphIndex(const graph::PropertyGraph& graph) : graph_(&graph) {
  std::unordered_map<std::string, std::size_t> node_index;
  for (const auto& [id, node] : graph.nodes()) {
    node_index.emplace(id, nodes_.size());
    for (const auto& label : node.labels) by_label_[label].push_back(nodes_.size());
    nodes_.push_back(&node);
  }
  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  for (const auto& [id, edge] : graph.edges()) {
    std::size_t e = edges_.size();
    std::size_t s = node_index.at(edge.source);
    std::size_t t = node_index.at(edge.target);
    edges_.push_back(&edge);
    edge_source_.push_back(s);
    edge_target_.push_back(t);
    out_[s].push_back(e);
    in_[t].push_back(e);
  }
}

const std::vector<std::size_t>& GraphIndex::nodes_with_label(const std::string& label) const {
  static const std::vector<std::size_t> kNone;
  auto it = by_label_.find(label);
  return it == by_label_.end() ? kNone : it->second;
}

namespace {

constexpr std::size_t kUnbound = std::numeric_limits<std::size_t>::max();

struct Slot {
  VariableKind kind;
  std::optional<std::string> name;
  std::vector<std::string> labels;  // node slots: every label must be present
};

struct EdgeConstraint {
  std::size_t edge;
  std::optional<std::string> type;
  std::size_t left;
  std::size_t right;
  Direction direction;
};

struct Conjunct {
  const BoolExpr* expr;
  std::vector<std::size_t> slots;
};

struct Step {
  enum class Kind { Scan, Expand } kind;
  std::size_t target;  // slot for Scan, constraint for Expand
  std::vector<std::size_t> conjuncts;
};

bool numeric_equal(const PropertyValue& v, const Literal& lit, bool& comparable) {
  double lhs = 0;
  bool lhs_int = false;
  std::int64_t lhs_i = 0;
  if (v.is<std::int64_t>()) {
    lhs_i = v.as<std::int64_t>();
    lhs = static_cast<double>(lhs_i);
    lhs_int = true;
  } else if (v.is<double>()) {
    lhs = v.as<double>();
  } else {
    comparable = false;
    return false;
  }
  if (const auto* i = std::get_if<std::int64_t>(&lit)) {
    comparable = true;
    return lhs_int ? lhs_i == *i : lhs == static_cast<double>(*i);
  }
  if (const auto* d = std::get_if<double>(&lit)) {
    comparable = true;
    return lhs == *d;
  }
  comparable = false;
  return false;
}

bool values_equal(const PropertyValue& v, const Literal& lit) {
  bool comparable = false;
  bool eq = numeric_equal(v, lit, comparable);
  if (comparable) return eq;
  if (const auto* s = std::get_if<std::string>(&lit)) {
    return v.is<std::string>() && v.as<std::string>() == *s;
  }
  if (const auto* b = std::get_if<bool>(&lit)) return v.is<bool>() && v.as<bool>() == *b;
  return false;
}

class Evaluation {
 public:
  Evaluation(const GraphIndex& index, const QueryAst& ast) : index_(index), ast_(ast) {
    compile_patterns();
    compile_filter();
    plan();
    columns_ = result_columns(ast);
    for (const auto& c : columns_) column_slots_.push_back(named_.at(c));
  }

  ResultSet run() {
    assignment_.assign(slots_.size(), kUnbound);
    search(0);
    ResultSet out;
    out.columns = columns_;
    std::size_t limit = ast_.limit ? static_cast<std::size_t>(std::max<std::int64_t>(*ast_.limit, 0))
                                   : rows_.size();
    for (const auto& row : rows_) {
      if (out.rows.size() >= limit) break;
      out.rows.push_back(row);
    }
    for (const auto& row : out.rows) {
      for (const auto& ref : row) {
        if (ref.kind == VariableKind::Node) {
          out.subgraph.nodes.insert(ref.id);
        } else {
          const auto* e = index_.graph().edge(ref.id);
          out.subgraph.edges.insert(ref.id);
          out.subgraph.nodes.insert(e->source);
          out.subgraph.nodes.insert(e->target);
        }
      }
    }
    return out;
  }

 private:
  std::size_t slot_for(const std::optional<std::string>& name, VariableKind kind) {
    if (name) {
      auto it = named_.find(*name);
      if (it != named_.end()) return it->second;
    }
    slots_.push_back(Slot{kind, name, {}});
    if (name) named_.emplace(*name, slots_.size() - 1);
    return slots_.size() - 1;
  }

  void compile_patterns() {
    for (const auto& p : ast_.patterns) {
      std::vector<std::size_t> node_slots;
      for (const auto& n : p.nodes) {
        std::size_t s = slot_for(n.variable, VariableKind::Node);
        if (n.label) slots_[s].labels.push_back(*n.label);
        node_slots.push_back(s);
      }
      for (std::size_t i = 0; i < p.edges.size(); ++i) {
        const auto& e = p.edges[i];
        std::size_t s = slot_for(e.variable, VariableKind::Edge);
        constraints_.push_back({s, e.type, node_slots[i], node_slots[i + 1], e.direction});
      }
    }
  }

  void compile_filter() {
    if (!ast_.filter) return;
    std::vector<const BoolExpr*> parts;
    if (ast_.filter->kind == BoolExpr::Kind::And) {
      for (const auto& op : ast_.filter->operands) parts.push_back(&op);
    } else {
      parts.push_back(&*ast_.filter);
    }
    for (const auto* part : parts) {
      std::vector<std::string> vars;
      collect_filter_variables(*part, vars);
      Conjunct c{part, {}};
      for (const auto& v : vars) c.slots.push_back(named_.at(v));
      conjuncts_.push_back(std::move(c));
    }
    compile_regexes(*ast_.filter);
  }

  void compile_regexes(const BoolExpr& e) {
    if (e.kind != BoolExpr::Kind::Compare) {
      for (const auto& op : e.operands) compile_regexes(op);
      return;
    }
    if (e.comparison.op != CompareOp::RegexMatch) return;
    const auto& pattern = std::get<std::string>(e.comparison.value);
    if (regexes_.count(pattern)) return;
    try {
      regexes_.emplace(pattern, std::regex(pattern, std::regex::ECMAScript));
    } catch (const std::regex_error& err) {
      throw Error(ErrorCode::Evaluation,
                  "invalid regular expression \"" + pattern + "\": " + err.what());
    }
  }

  std::size_t scan_estimate(std::size_t slot) const {
    std::size_t best = index_.nodes().size();
    for (const auto& l : slots_[slot].labels) best = std::min(best, index_.nodes_with_label(l).size());
    return best;
  }

  void plan() {
    std::vector<bool> bound(slots_.size(), false);
    std::vector<bool> done(constraints_.size(), false);
    std::vector<bool> placed(conjuncts_.size(), false);
    std::size_t remaining = constraints_.size();
    auto attach = [&](Step& step) {
      for (std::size_t c = 0; c < conjuncts_.size(); ++c) {
        if (placed[c]) continue;
        bool ready = std::all_of(conjuncts_[c].slots.begin(), conjuncts_[c].slots.end(),
                                 [&](std::size_t s) { return bound[s]; });
        if (ready) {
          step.conjuncts.push_back(c);
          placed[c] = true;
        }
      }
    };
    for (;;) {
      // Prefer closing constraints whose endpoints are already bound, then
      // constraints reachable from a bound element.
      std::size_t pick = kUnbound;
      int pick_score = -1;
      for (std::size_t c = 0; c < constraints_.size(); ++c) {
        if (done[c]) continue;
        const auto& k = constraints_[c];
        int score = (bound[k.left] ? 1 : 0) + (bound[k.right] ? 1 : 0) + (bound[k.edge] ? 2 : 0);
        if (score > 0 && score > pick_score) {
          pick = c;
          pick_score = score;
        }
      }
      if (pick != kUnbound) {
        const auto& k = constraints_[pick];
        Step step{Step::Kind::Expand, pick, {}};
        bound[k.edge] = bound[k.left] = bound[k.right] = true;
        done[pick] = true;
        --remaining;
        attach(step);
        steps_.push_back(std::move(step));
        continue;
      }
      std::size_t scan = kUnbound;
      for (std::size_t s = 0; s < slots_.size(); ++s) {
        if (bound[s] || slots_[s].kind != VariableKind::Node) continue;
        if (scan == kUnbound || scan_estimate(s) < scan_estimate(scan)) scan = s;
      }
      if (scan == kUnbound) break;
      Step step{Step::Kind::Scan, scan, {}};
      bound[scan] = true;
      attach(step);
      steps_.push_back(std::move(step));
    }
    (void)remaining;
  }

  const PropertyMap& properties(std::size_t slot) const {
    std::size_t v = assignment_[slot];
    if (slots_[slot].kind == VariableKind::Node) return index_.nodes()[v]->properties;
    return index_.edges()[v]->properties;
  }

  bool holds(const BoolExpr& e) const {
    switch (e.kind) {
      case BoolExpr::Kind::And:
        return std::all_of(e.operands.begin(), e.operands.end(),
                           [&](const BoolExpr& op) { return holds(op); });
      case BoolExpr::Kind::Or:
        return std::any_of(e.operands.begin(), e.operands.end(),
                           [&](const BoolExpr& op) { return holds(op); });
      case BoolExpr::Kind::Not:
        return !holds(e.operands.front());
      case BoolExpr::Kind::Compare:
        break;
    }
    const auto& c = e.comparison;
    const auto& props = properties(named_.at(c.variable));
    auto it = props.find(c.key);
    if (it == props.end()) return false;
    switch (c.op) {
      case CompareOp::Equal:
        return values_equal(it->second, c.value);
      case CompareOp::NotEqual:
        return !values_equal(it->second, c.value);
      case CompareOp::RegexMatch:
        return it->second.is<std::string>() &&
               std::regex_match(it->second.as<std::string>(),
                                regexes_.at(std::get<std::string>(c.value)));
    }
    return false;
  }

  bool has_labels(std::size_t slot, std::size_t node) const {
    const auto& labels = index_.nodes()[node]->labels;
    for (const auto& l : slots_[slot].labels) {
      if (!labels.count(l)) return false;
    }
    return true;
  }

  void search(std::size_t step_index) {
    if (step_index == steps_.size()) {
      emit();
      return;
    }
    const Step& step = steps_[step_index];
    auto proceed = [&] {
      for (std::size_t c : step.conjuncts) {
        if (!holds(*conjuncts_[c].expr)) return;
      }
      search(step_index + 1);
    };

    if (step.kind == Step::Kind::Scan) {
      std::size_t slot = step.target;
      const auto& labels = slots_[slot].labels;
      auto visit = [&](std::size_t n) {
        if (!has_labels(slot, n)) return;
        assignment_[slot] = n;
        proceed();
      };
      if (!labels.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < labels.size(); ++i) {
          if (index_.nodes_with_label(labels[i]).size() <
              index_.nodes_with_label(labels[best]).size()) {
            best = i;
          }
        }
        for (std::size_t n : index_.nodes_with_label(labels[best])) visit(n);
      } else {
        for (std::size_t n = 0; n < index_.nodes().size(); ++n) visit(n);
      }
      assignment_[slot] = kUnbound;
      return;
    }

    const auto& k = constraints_[step.target];
    std::size_t edge_value = assignment_[k.edge];
    std::size_t left_value = assignment_[k.left];
    std::size_t right_value = assignment_[k.right];

    auto try_edge = [&](std::size_t e) {
      if (k.type && index_.edges()[e]->type != *k.type) return;
      std::size_t src = index_.edge_source(e);
      std::size_t tgt = index_.edge_target(e);
      std::pair<std::size_t, std::size_t> orientations[2];
      std::size_t count = 0;
      if (k.direction != Direction::Left) orientations[count++] = {src, tgt};
      if (k.direction != Direction::Right && !(k.direction == Direction::Undirected && src == tgt)) {
        orientations[count++] = {tgt, src};
      }
      for (std::size_t i = 0; i < count; ++i) {
        auto [l, r] = orientations[i];
        if (left_value != kUnbound && left_value != l) continue;
        if (left_value == kUnbound && !has_labels(k.left, l)) continue;
        assignment_[k.edge] = e;
        assignment_[k.left] = l;
        if (assignment_[k.right] != kUnbound) {
          if (assignment_[k.right] == r) proceed();
        } else if (has_labels(k.right, r)) {
          assignment_[k.right] = r;
          proceed();
        }
        assignment_[k.edge] = edge_value;
        assignment_[k.left] = left_value;
        assignment_[k.right] = right_value;
      }
    };

    if (edge_value != kUnbound) {
      try_edge(edge_value);
      return;
    }
    auto expand_from = [&](std::size_t node, bool node_is_left) {
      bool want_out = k.direction == Direction::Undirected ||
                      (k.direction == Direction::Right) == node_is_left;
      bool want_in = k.direction == Direction::Undirected ||
                     (k.direction == Direction::Left) == node_is_left;
      if (want_out) {
        for (std::size_t e : index_.out_edges(node)) try_edge(e);
      }
      if (want_in) {
        for (std::size_t e : index_.in_edges(node)) {
          // A self-loop already appeared among the out-edges.
          if (want_out && index_.edge_source(e) == index_.edge_target(e)) continue;
          try_edge(e);
        }
      }
    };
    if (left_value != kUnbound) {
      expand_from(left_value, true);
    } else {
      expand_from(right_value, false);
    }
  }

  void emit() {
    Row row;
    row.reserve(column_slots_.size());
    for (std::size_t s : column_slots_) {
      std::size_t v = assignment_[s];
      if (slots_[s].kind == VariableKind::Node) {
        row.push_back({VariableKind::Node, index_.nodes()[v]->id});
      } else {
        row.push_back({VariableKind::Edge, index_.edges()[v]->id});
      }
    }
    rows_.insert(std::move(row));
  }

  const GraphIndex& index_;
  const QueryAst& ast_;
  std::vector<Slot> slots_;
  std::map<std::string, std::size_t> named_;
  std::vector<EdgeConstraint> constraints_;
  std::vector<Conjunct> conjuncts_;
  std::map<std::string, std::regex> regexes_;
  std::vector<Step> steps_;
  std::vector<std::string> columns_;
  std::vector<std::size_t> column_slots_;
  std::vector<std::size_t> assignment_;
  std::set<Row> rows_;
};

}  // namespace

ResultSet evaluate(const GraphIndex& index, const QueryAst& ast) {
  return Evaluation(index, ast).run();
}

ResultSet evaluate(const graph::PropertyGraph& graph, const QueryAst& ast) {
  GraphIndex index(graph);
  return evaluate(index, ast);
}

}  // namespace lemmagraph::qengine
