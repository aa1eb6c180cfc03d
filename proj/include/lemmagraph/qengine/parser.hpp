// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "lemmagraph/qengine/ast.hpp"
#include "lemmagraph/qengine/lexer.hpp"

namespace lemmagraph::qengine {

/// Parses the supported query subset:
///
///   query    := MATCH pattern (',' pattern)* (WHERE expr)?
///               RETURN ('*' | name (',' name)*) (LIMIT integer)?
///   pattern  := node (edge node)*
///   node     := '(' name? (':' name)? ')'
///   edge     := '-' detail? '-' '>' | '<' '-' detail? '-' | '-' detail? '-'
///   detail   := '[' name? (':' name)? ']'
///   expr     := and (OR and)*
///   and      := not (AND not)*
///   not      := NOT not | '(' expr ')' | name '.' name op literal
///   op       := '=' | '<>' | '=~'
///   literal  := string | '-'? integer | '-'? float | TRUE | FALSE
///
/// Keywords are case-insensitive; names are case-sensitive and may be
/// backtick-quoted. Throws SyntaxError (position + expected set) or
/// Error(Semantic) for unbound or conflicting variables.
QueryAst parse_query(std::string_view text);

/// Canonical text for an AST; parse_query(print_query(ast)) == ast.
std::string print_query(const QueryAst& ast);

}  // namespace lemmagraph::qengine
