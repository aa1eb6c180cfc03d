// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lemmagraph/error.hpp"

namespace lemmagraph::qengine {

enum class TokenKind {
  Identifier,
  String,
  Integer,
  Float,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Colon,
  Comma,
  Dot,
  Star,
  Minus,
  Less,
  Greater,
  Equal,
  NotEqual,    // <>
  RegexMatch,  // =~
  End,
};

std::string_view describe(TokenKind kind);

struct SourcePosition {
  std::size_t offset = 0;  // bytes from the start of the query
  std::size_t line = 1;
  std::size_t column = 1;  // 1-based, in bytes
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier name or decoded string literal; raw text otherwise
  bool quoted = false;  // backtick-quoted identifier, never a keyword
  SourcePosition pos;
};

/// Syntax errors carry the source position and the set of token descriptions
/// that would have been accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourcePosition pos, std::vector<std::string> expected)
      : Error(ErrorCode::Syntax, message, pos.offset), pos_(pos), expected_(std::move(expected)) {}

  const SourcePosition& where() const { return pos_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourcePosition pos_;
  std::vector<std::string> expected_;
};

std::vector<Token> tokenize(std::string_view text);

/// Whether `word` is reserved (case-insensitive) and must be backtick-quoted to
/// be used as a name.
bool is_keyword(std::string_view word);

}  // namespace lemmagraph::qengine
