// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <charconv>
#include <cstdio>

#include "lemmagraph/qengine/parser.hpp"

namespace lemmagraph::qengine {

namespace {

bool plain_identifier(const std::string& s) {
  if (s.empty() || is_keyword(s)) return false;
  auto first = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(first) || s[0] == '_' || first >= 0x80)) return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || c == '_' || u >= 0x80)) return false;
  }
  return true;
}

void print_name(std::string& out, const std::string& name) {
  if (plain_identifier(name)) {
    out += name;
    return;
  }
  out += '`';
  for (char c : name) {
    if (c == '`') out += '`';
    out += c;
  }
  out += '`';
}

void print_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void print_literal(std::string& out, const Literal& lit) {
  if (const auto* s = std::get_if<std::string>(&lit)) {
    print_string(out, *s);
  } else if (const auto* i = std::get_if<std::int64_t>(&lit)) {
    out += std::to_string(*i);
  } else if (const auto* d = std::get_if<double>(&lit)) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, *d);
    std::string text(buf, end);
    if (text.find_first_of(".eE") == std::string::npos) text += ".0";
    out += text;
  } else {
    out += std::get<bool>(lit) ? "true" : "false";
  }
}

void print_node(std::string& out, const NodeAtom& n) {
  out += '(';
  if (n.variable) print_name(out, *n.variable);
  if (n.label) {
    out += ':';
    print_name(out, *n.label);
  }
  out += ')';
}

void print_edge(std::string& out, const EdgeAtom& e) {
  out += e.direction == Direction::Left ? "<-" : "-";
  if (e.variable || e.type) {
    out += '[';
    if (e.variable) print_name(out, *e.variable);
    if (e.type) {
      out += ':';
      print_name(out, *e.type);
    }
    out += ']';
  }
  out += e.direction == Direction::Right ? "->" : "-";
}

void print_expr(std::string& out, const BoolExpr& e);

void print_operand(std::string& out, const BoolExpr& e) {
  bool group = e.kind == BoolExpr::Kind::And || e.kind == BoolExpr::Kind::Or;
  if (group) out += '(';
  print_expr(out, e);
  if (group) out += ')';
}

void print_expr(std::string& out, const BoolExpr& e) {
  switch (e.kind) {
    case BoolExpr::Kind::Compare: {
      const auto& c = e.comparison;
      print_name(out, c.variable);
      out += '.';
      print_name(out, c.key);
      out += c.op == CompareOp::Equal ? " = " : c.op == CompareOp::NotEqual ? " <> " : " =~ ";
      print_literal(out, c.value);
      return;
    }
    case BoolExpr::Kind::Not:
      out += "NOT ";
      print_operand(out, e.operands.front());
      return;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      const char* sep = e.kind == BoolExpr::Kind::And ? " AND " : " OR ";
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i > 0) out += sep;
        print_operand(out, e.operands[i]);
      }
      return;
    }
  }
}

}  // namespace

std::string print_query(const QueryAst& ast) {
  std::string out = "MATCH ";
  for (std::size_t p = 0; p < ast.patterns.size(); ++p) {
    if (p > 0) out += ", ";
    const auto& pattern = ast.patterns[p];
    for (std::size_t i = 0; i < pattern.nodes.size(); ++i) {
      if (i > 0) print_edge(out, pattern.edges[i - 1]);
      print_node(out, pattern.nodes[i]);
    }
  }
  if (ast.filter) {
    out += " WHERE ";
    print_expr(out, *ast.filter);
  }
  out += " RETURN ";
  if (ast.returns.star) {
    out += '*';
  } else {
    for (std::size_t i = 0; i < ast.returns.variables.size(); ++i) {
      if (i > 0) out += ", ";
      print_name(out, ast.returns.variables[i]);
    }
  }
  if (ast.limit) out += " LIMIT " + std::to_string(*ast.limit);
  return out;
}

}  // namespace lemmagraph::qengine
