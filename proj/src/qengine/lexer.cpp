// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/qengine/lexer.hpp"

#include <cctype>
#include <charconv>

namespace lemmagraph::qengine {

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::String: return "string literal";
    case TokenKind::Integer: return "integer";
    case TokenKind::Float: return "float";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Comma: return "','";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Less: return "'<'";
    case TokenKind::Greater: return "'>'";
    case TokenKind::Equal: return "'='";
    case TokenKind::NotEqual: return "'<>'";
    case TokenKind::RegexMatch: return "'=~'";
    case TokenKind::End: return "end of query";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  static constexpr std::string_view kKeywords[] = {"MATCH", "WHERE", "RETURN", "LIMIT", "AND",
                                                   "OR",    "NOT",   "TRUE",   "FALSE"};
  for (auto k : kKeywords) {
    if (k.size() != word.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < k.size() && same; ++i) {
      same = std::toupper(static_cast<unsigned char>(word[i])) == k[i];
    }
    if (same) return true;
  }
  return false;
}

namespace {

bool ident_start(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '_' || u >= 0x80;
}

bool ident_char(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = pos_;
      if (at_end()) {
        out.push_back(std::move(t));
        return out;
      }
      char c = peek();
      if (ident_start(c)) {
        t.kind = TokenKind::Identifier;
        while (!at_end() && ident_char(peek())) t.text += advance();
      } else if (c == '`') {
        t.kind = TokenKind::Identifier;
        t.quoted = true;
        t.text = quoted_identifier();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        number(t);
      } else if (c == '"' || c == '\'') {
        t.kind = TokenKind::String;
        t.text = string_literal();
      } else {
        punctuation(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool at_end() const { return pos_.offset >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_.offset + ahead < src_.size() ? src_[pos_.offset + ahead] : '\0';
  }
  char advance() {
    char c = src_[pos_.offset++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& what, SourcePosition at,
                         std::vector<std::string> expected = {}) const {
    throw SyntaxError("line " + std::to_string(at.line) + ", column " +
                          std::to_string(at.column) + ": " + what,
                      at, std::move(expected));
  }

  void skip_space() {
    for (;;) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      return;
    }
  }

  std::string quoted_identifier() {
    SourcePosition start = pos_;
    advance();
    std::string out;
    for (;;) {
      if (at_end()) fail("unterminated quoted name", start, {"'`'"});
      char c = advance();
      if (c == '`') {
        if (peek() == '`') {
          out += advance();
          continue;
        }
        break;
      }
      out += c;
    }
    if (out.empty()) fail("empty quoted name", start);
    return out;
  }

  void number(Token& t) {
    std::size_t begin = pos_.offset;
    bool is_float = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_float = true;
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t look = 1;
      if (peek(1) == '+' || peek(1) == '-') look = 2;
      if (std::isdigit(static_cast<unsigned char>(peek(look)))) {
        is_float = true;
        for (std::size_t i = 0; i < look; ++i) advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
    }
    if (ident_start(peek())) fail("malformed number", t.pos);
    t.kind = is_float ? TokenKind::Float : TokenKind::Integer;
    t.text = std::string(src_.substr(begin, pos_.offset - begin));
  }

  std::string string_literal() {
    SourcePosition start = pos_;
    char quote = advance();
    std::string out;
    for (;;) {
      if (at_end()) fail("unterminated string literal", start);
      char c = advance();
      if (c == quote) return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      SourcePosition esc = pos_;
      if (at_end()) fail("unterminated string literal", start);
      char e = advance();
      switch (e) {
        case '\\': out += '\\'; break;
        case '\'': out += '\''; break;
        case '"': out += '"'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'u': {
          std::uint32_t cp = 0;
          for (int i = 0; i < 4; ++i) {
            char h = peek();
            if (!std::isxdigit(static_cast<unsigned char>(h))) {
              fail("\\u escape needs four hex digits", esc);
            }
            advance();
            cp = cp * 16 + static_cast<std::uint32_t>(
                               std::isdigit(static_cast<unsigned char>(h))
                                   ? h - '0'
                                   : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
          }
          append_utf8(out, cp);
          break;
        }
        default:
          fail(std::string("unknown escape sequence '\\") + e + "'", esc);
      }
    }
  }

  void punctuation(Token& t) {
    char c = advance();
    t.text = std::string(1, c);
    switch (c) {
      case '(': t.kind = TokenKind::LParen; return;
      case ')': t.kind = TokenKind::RParen; return;
      case '[': t.kind = TokenKind::LBracket; return;
      case ']': t.kind = TokenKind::RBracket; return;
      case ':': t.kind = TokenKind::Colon; return;
      case ',': t.kind = TokenKind::Comma; return;
      case '.': t.kind = TokenKind::Dot; return;
      case '*': t.kind = TokenKind::Star; return;
      case '-': t.kind = TokenKind::Minus; return;
      case '>': t.kind = TokenKind::Greater; return;
      case '<':
        if (peek() == '>') {
          advance();
          t.kind = TokenKind::NotEqual;
          t.text = "<>";
          return;
        }
        t.kind = TokenKind::Less;
        return;
      case '=':
        if (peek() == '~') {
          advance();
          t.kind = TokenKind::RegexMatch;
          t.text = "=~";
          return;
        }
        t.kind = TokenKind::Equal;
        return;
      default:
        fail(std::string("unexpected character '") + c + "'", t.pos);
    }
  }

  std::string_view src_;
  SourcePosition pos_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace lemmagraph::qengine
