// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/qengine/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <map>

namespace lemmagraph::qengine {

namespace {

bool keyword_equals(const Token& t, std::string_view kw) {
  if (t.kind != TokenKind::Identifier || t.quoted || t.text.size() != kw.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(t.text[i])) != kw[i]) return false;
  }
  return true;
}

std::string quote_keyword(std::string_view kw) { return "'" + std::string(kw) + "'"; }

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  QueryAst query() {
    QueryAst ast;
    expect_keyword("MATCH");
    ast.patterns.push_back(pattern());
    while (accept(TokenKind::Comma)) ast.patterns.push_back(pattern());
    if (accept_keyword("WHERE")) ast.filter = or_expr();
    if (!accept_keyword("RETURN")) {
      fail(ast.filter ? std::vector<std::string>{"'AND'", "'OR'", quote_keyword("RETURN")}
                      : std::vector<std::string>{"','", "'-'", "'<'", quote_keyword("WHERE"),
                                                 quote_keyword("RETURN")});
    }
    if (accept(TokenKind::Star)) {
      ast.returns.star = true;
    } else {
      ast.returns.variables.push_back(name({"'*'", "identifier"}));
      while (accept(TokenKind::Comma)) ast.returns.variables.push_back(name({"identifier"}));
    }
    if (accept_keyword("LIMIT")) {
      const Token& t = current();
      if (t.kind != TokenKind::Integer) fail({"integer"});
      ast.limit = to_int(t, false);
      ++index_;
    }
    if (current().kind != TokenKind::End) {
      fail(ast.limit ? std::vector<std::string>{"end of query"}
                     : std::vector<std::string>{"','", quote_keyword("LIMIT"), "end of query"});
    }
    return ast;
  }

 private:
  const Token& current() const { return tokens_[index_]; }

  bool accept(TokenKind kind) {
    if (current().kind != kind) return false;
    ++index_;
    return true;
  }

  void expect(TokenKind kind, std::vector<std::string> alternatives = {}) {
    if (accept(kind)) return;
    alternatives.emplace_back(describe(kind));
    fail(std::move(alternatives));
  }

  bool accept_keyword(std::string_view kw) {
    if (!keyword_equals(current(), kw)) return false;
    ++index_;
    return true;
  }

  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail({quote_keyword(kw)});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = current();
    std::string found = t.kind == TokenKind::End ? "end of query"
                        : t.kind == TokenKind::String ? "string literal"
                                                      : "'" + t.text + "'";
    std::string msg = "line " + std::to_string(t.pos.line) + ", column " +
                      std::to_string(t.pos.column) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + found;
    throw SyntaxError(msg, t.pos, std::move(expected));
  }

  bool at_name() const {
    const Token& t = current();
    return t.kind == TokenKind::Identifier && (t.quoted || !is_keyword(t.text));
  }

  std::string name(std::vector<std::string> expected) {
    if (!at_name()) fail(std::move(expected));
    return tokens_[index_++].text;
  }

  std::int64_t to_int(const Token& t, bool negative) {
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
    const std::uint64_t max = negative ? std::uint64_t{1} << 63
                                       : static_cast<std::uint64_t>(
                                             std::numeric_limits<std::int64_t>::max());
    if (ec != std::errc() || magnitude > max) {
      throw SyntaxError("line " + std::to_string(t.pos.line) + ", column " +
                            std::to_string(t.pos.column) + ": integer out of range",
                        t.pos, {"integer"});
    }
    if (negative) return static_cast<std::int64_t>(0 - magnitude);
    return static_cast<std::int64_t>(magnitude);
  }

  PathPattern pattern() {
    PathPattern p;
    p.nodes.push_back(node_atom());
    for (;;) {
      if (current().kind == TokenKind::Minus || current().kind == TokenKind::Less) {
        p.edges.push_back(edge_atom());
        p.nodes.push_back(node_atom());
      } else {
        return p;
      }
    }
  }

  NodeAtom node_atom() {
    NodeAtom n;
    expect(TokenKind::LParen);
    if (at_name()) n.variable = name({});
    if (accept(TokenKind::Colon)) n.label = name({"label"});
    if (!accept(TokenKind::RParen)) {
      std::vector<std::string> exp;
      if (!n.variable && !n.label) exp.emplace_back("identifier");
      if (!n.label) exp.emplace_back("':'");
      exp.emplace_back("')'");
      fail(std::move(exp));
    }
    return n;
  }

  void edge_detail(EdgeAtom& e) {
    if (!accept(TokenKind::LBracket)) return;
    if (at_name()) e.variable = name({});
    if (accept(TokenKind::Colon)) e.type = name({"relationship type"});
    if (!accept(TokenKind::RBracket)) {
      std::vector<std::string> exp;
      if (!e.variable && !e.type) exp.emplace_back("identifier");
      if (!e.type) exp.emplace_back("':'");
      exp.emplace_back("']'");
      fail(std::move(exp));
    }
  }

  EdgeAtom edge_atom() {
    EdgeAtom e;
    bool left = accept(TokenKind::Less);
    expect(TokenKind::Minus);
    edge_detail(e);
    expect(TokenKind::Minus, e.variable || e.type ? std::vector<std::string>{}
                                                  : std::vector<std::string>{"'['"});
    bool right = accept(TokenKind::Greater);
    if (left && !right) {
      e.direction = Direction::Left;
    } else if (right && !left) {
      e.direction = Direction::Right;
    } else {
      e.direction = Direction::Undirected;
    }
    return e;
  }

  BoolExpr or_expr() {
    std::vector<BoolExpr> parts{and_expr()};
    while (accept_keyword("OR")) parts.push_back(and_expr());
    if (parts.size() == 1) return std::move(parts.front());
    return BoolExpr::combine(BoolExpr::Kind::Or, std::move(parts));
  }

  BoolExpr and_expr() {
    std::vector<BoolExpr> parts{not_expr()};
    while (accept_keyword("AND")) parts.push_back(not_expr());
    if (parts.size() == 1) return std::move(parts.front());
    return BoolExpr::combine(BoolExpr::Kind::And, std::move(parts));
  }

  BoolExpr not_expr() {
    if (accept_keyword("NOT")) return BoolExpr::combine(BoolExpr::Kind::Not, {not_expr()});
    if (accept(TokenKind::LParen)) {
      BoolExpr inner = or_expr();
      expect(TokenKind::RParen, {"'AND'", "'OR'"});
      return inner;
    }
    Comparison c;
    c.variable = name({quote_keyword("NOT"), "'('", "identifier"});
    expect(TokenKind::Dot);
    c.key = name({"property name"});
    if (accept(TokenKind::Equal)) {
      c.op = CompareOp::Equal;
    } else if (accept(TokenKind::NotEqual)) {
      c.op = CompareOp::NotEqual;
    } else if (accept(TokenKind::RegexMatch)) {
      c.op = CompareOp::RegexMatch;
    } else {
      fail({"'='", "'<>'", "'=~'"});
    }
    if (c.op == CompareOp::RegexMatch) {
      if (current().kind != TokenKind::String) fail({"string literal"});
      c.value = tokens_[index_++].text;
    } else {
      c.value = literal();
    }
    return BoolExpr::compare(std::move(c));
  }

  Literal literal() {
    bool negative = accept(TokenKind::Minus);
    const Token& t = current();
    if (t.kind == TokenKind::Integer) {
      ++index_;
      return to_int(t, negative);
    }
    if (t.kind == TokenKind::Float) {
      ++index_;
      double v = std::strtod(t.text.c_str(), nullptr);
      return negative ? -v : v;
    }
    if (negative) fail({"integer", "float"});
    if (t.kind == TokenKind::String) {
      ++index_;
      return t.text;
    }
    if (accept_keyword("TRUE")) return true;
    if (accept_keyword("FALSE")) return false;
    fail({"string literal", "integer", "float", "'TRUE'", "'FALSE'"});
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

[[noreturn]] void semantic(const std::string& message) {
  throw Error(ErrorCode::Semantic, message);
}

void check_semantics(const QueryAst& ast) {
  std::map<std::string, VariableKind> kinds;
  auto bind = [&](const std::optional<std::string>& var, VariableKind kind) {
    if (!var) return;
    auto [it, inserted] = kinds.emplace(*var, kind);
    if (!inserted && it->second != kind) {
      semantic("variable '" + *var + "' is bound to both a node and a relationship");
    }
  };
  for (const auto& p : ast.patterns) {
    for (const auto& n : p.nodes) bind(n.variable, VariableKind::Node);
    for (const auto& e : p.edges) bind(e.variable, VariableKind::Edge);
  }
  if (ast.filter) {
    std::vector<std::string> used;
    collect_filter_variables(*ast.filter, used);
    for (const auto& v : used) {
      if (!kinds.count(v)) semantic("variable '" + v + "' is not bound by any pattern");
    }
  }
  if (ast.returns.star) {
    if (kinds.empty()) semantic("RETURN * requires at least one named variable");
  } else {
    for (std::size_t i = 0; i < ast.returns.variables.size(); ++i) {
      const auto& v = ast.returns.variables[i];
      if (!kinds.count(v)) semantic("variable '" + v + "' is not bound by any pattern");
      for (std::size_t j = 0; j < i; ++j) {
        if (ast.returns.variables[j] == v) semantic("variable '" + v + "' is returned twice");
      }
    }
  }
}

}  // namespace

std::vector<BoundVariable> bound_variables(const QueryAst& ast) {
  std::vector<BoundVariable> out;
  auto add = [&](const std::optional<std::string>& var, VariableKind kind) {
    if (!var) return;
    for (const auto& b : out) {
      if (b.name == *var) return;
    }
    out.push_back({*var, kind});
  };
  for (const auto& p : ast.patterns) {
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      add(p.nodes[i].variable, VariableKind::Node);
      if (i < p.edges.size()) add(p.edges[i].variable, VariableKind::Edge);
    }
  }
  return out;
}

std::vector<std::string> result_columns(const QueryAst& ast) {
  if (!ast.returns.star) return ast.returns.variables;
  std::vector<std::string> out;
  for (const auto& b : bound_variables(ast)) out.push_back(b.name);
  return out;
}

void collect_filter_variables(const BoolExpr& expr, std::vector<std::string>& out) {
  if (expr.kind == BoolExpr::Kind::Compare) {
    if (std::find(out.begin(), out.end(), expr.comparison.variable) == out.end()) {
      out.push_back(expr.comparison.variable);
    }
    return;
  }
  for (const auto& op : expr.operands) collect_filter_variables(op, out);
}

QueryAst parse_query(std::string_view text) {
  QueryAst ast = Parser(tokenize(text)).query();
  check_semantics(ast);
  return ast;
}

}  // namespace lemmagraph::qengine
