// SPDX-License-Identifier: Apache-2.0
#include <cctype>

#include "lemmagraph/error.hpp"
#include "lemmagraph/qengine/lexer.hpp"
#include "lemmagraph/qengine/parser.hpp"
#include "lemmagraph/qtemplate/qtemplate.hpp"

namespace lemmagraph::qtemplate {

namespace {

enum class Context { Bare, RegexLiteral, StringLiteral, QuotedName };

bool is_plain_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return !qengine::is_keyword(s);
}

bool is_plain_number(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  bool digits = false;
  bool dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits && s.back() != '.';
}

std::string escape_string_content(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

bool ends_with_regex_operator(std::string_view before) {
  std::size_t end = before.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(before[end - 1]))) --end;
  return end >= 2 && before.substr(end - 2, 2) == "=~";
}

// Lexical context of each byte offset in the query template.
std::vector<Context> classify(std::string_view text) {
  std::vector<Context> ctx(text.size(), Context::Bare);
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '"' || c == '\'') {
      Context kind =
          ends_with_regex_operator(text.substr(0, i)) ? Context::RegexLiteral : Context::StringLiteral;
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != c) {
        if (text[j] == '\\' && j + 1 < text.size()) ctx[j++] = kind;
        ctx[j++] = kind;
      }
      i = j + 1;
    } else if (c == '`') {
      std::size_t j = i + 1;
      while (j < text.size()) {
        if (text[j] == '`') {
          if (j + 1 < text.size() && text[j + 1] == '`') {
            ctx[j] = ctx[j + 1] = Context::QuotedName;
            j += 2;
            continue;
          }
          break;
        }
        ctx[j++] = Context::QuotedName;
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  return ctx;
}

void check_input(const std::string& value, std::size_t index) {
  std::string where = "input " + std::to_string(index);
  if (value.empty()) throw Error(ErrorCode::Validation, where + " is empty");
  for (char c : value) {
    if (c == '"' || c == '\'' || c == '`') {
      throw Error(ErrorCode::RejectedInput, where + " contains a quote character");
    }
  }
  if (!ingest::find_placeholders(value).empty()) {
    throw Error(ErrorCode::RejectedInput, where + " contains a placeholder");
  }
}

}  // namespace

std::string regex_escape(std::string_view text) {
  static constexpr std::string_view kMeta = "\\^$.|?*+()[]{}";
  std::string out;
  for (char c : text) {
    if (kMeta.find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

TemplateInstance instantiate(const ingest::QueryTemplate& tmpl, const std::string& language,
                             const std::vector<std::string>& inputs) {
  auto text = tmpl.texts.find(language);
  if (text == tmpl.texts.end()) {
    throw Error(ErrorCode::Validation,
                "template " + tmpl.gid + " has no question in language \"" + language + "\"");
  }
  if (inputs.size() != tmpl.inputs.size()) {
    throw Error(ErrorCode::Arity, "template " + tmpl.gid + " expects " +
                                      std::to_string(tmpl.inputs.size()) + " inputs, got " +
                                      std::to_string(inputs.size()));
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) check_input(inputs[i], i);

  TemplateInstance out{tmpl.gid, language, inputs, {}, {}};

  std::size_t cursor = 0;
  for (const auto& p : ingest::find_placeholders(text->second)) {
    out.question.append(text->second, cursor, p.offset - cursor);
    out.question += inputs.at(p.index);
    cursor = p.offset + p.length;
  }
  out.question.append(text->second, cursor);

  const std::string& cypher = tmpl.cypher;
  auto ctx = classify(cypher);
  cursor = 0;
  for (const auto& p : ingest::find_placeholders(cypher)) {
    out.query.append(cypher, cursor, p.offset - cursor);
    const std::string& value = inputs.at(p.index);
    switch (ctx[p.offset]) {
      case Context::RegexLiteral:
        out.query += escape_string_content(tmpl.inputs[p.index].raw ? value : regex_escape(value));
        break;
      case Context::StringLiteral:
        out.query += escape_string_content(value);
        break;
      case Context::QuotedName:
        out.query += value;
        break;
      case Context::Bare:
        if (is_plain_identifier(value) || is_plain_number(value)) {
          out.query += value;
        } else {
          out.query += '`' + value + '`';
        }
        break;
    }
    cursor = p.offset + p.length;
  }
  out.query.append(cypher, cursor);

  try {
    qengine::parse_query(out.query);
  } catch (const Error& e) {
    throw Error(ErrorCode::TemplateDefinition,
                "template " + tmpl.gid + " renders an invalid query: " + e.what());
  }
  return out;
}

}  // namespace lemmagraph::qtemplate
