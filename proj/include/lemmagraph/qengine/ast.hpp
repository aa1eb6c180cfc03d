// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lemmagraph::qengine {

enum class Direction {
  Right,       // (a)-[]->(b)
  Left,        // (a)<-[]-(b)
  Undirected,  // (a)-[]-(b)
};

struct NodeAtom {
  std::optional<std::string> variable;
  std::optional<std::string> label;

  bool operator==(const NodeAtom&) const = default;
};

struct EdgeAtom {
  std::optional<std::string> variable;
  std::optional<std::string> type;
  Direction direction = Direction::Right;

  bool operator==(const EdgeAtom&) const = default;
};

/// node (edge node)*. `edges[i]` joins `nodes[i]` and `nodes[i + 1]`.
struct PathPattern {
  std::vector<NodeAtom> nodes;
  std::vector<EdgeAtom> edges;

  bool operator==(const PathPattern&) const = default;
};

using Literal = std::variant<std::string, std::int64_t, double, bool>;

enum class CompareOp { Equal, NotEqual, RegexMatch };

/// `variable.key <op> literal`
struct Comparison {
  std::string variable;
  std::string key;
  CompareOp op = CompareOp::Equal;
  Literal value;

  bool operator==(const Comparison&) const = default;
};

/// Boolean filter tree. And/Or are n-ary; Not has exactly one operand.
struct BoolExpr {
  enum class Kind { Compare, And, Or, Not };

  Kind kind = Kind::Compare;
  Comparison comparison;           // Kind::Compare only
  std::vector<BoolExpr> operands;  // And, Or, Not

  static BoolExpr compare(Comparison c) {
    BoolExpr e;
    e.comparison = std::move(c);
    return e;
  }
  static BoolExpr combine(Kind kind, std::vector<BoolExpr> operands) {
    BoolExpr e;
    e.kind = kind;
    e.operands = std::move(operands);
    return e;
  }

  bool operator==(const BoolExpr&) const = default;
};

struct ReturnClause {
  bool star = false;
  std::vector<std::string> variables;  // empty when star

  bool operator==(const ReturnClause&) const = default;
};

struct QueryAst {
  std::vector<PathPattern> patterns;
  std::optional<BoolExpr> filter;
  ReturnClause returns;
  std::optional<std::int64_t> limit;

  bool operator==(const QueryAst&) const = default;
};

enum class VariableKind { Node, Edge };

struct BoundVariable {
  std::string name;
  VariableKind kind;

  bool operator==(const BoundVariable&) const = default;
};

/// Named pattern variables in order of first appearance.
std::vector<BoundVariable> bound_variables(const QueryAst& ast);

/// Columns of the result: the RETURN list, or every named variable for `*`.
std::vector<std::string> result_columns(const QueryAst& ast);

/// Variables referenced by a filter expression.
void collect_filter_variables(const BoolExpr& expr, std::vector<std::string>& out);

}  // namespace lemmagraph::qengine
