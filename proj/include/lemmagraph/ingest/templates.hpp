// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lemmagraph::ingest {

enum class InputKind { Entity, EntityType, Relation, RelationDetail };

std::string_view to_string(InputKind kind);
std::optional<InputKind> input_kind_from_string(std::string_view s);

struct TemplateInput {
  std::string id;
  InputKind kind = InputKind::Entity;
  /// When set, the value is spliced into `=~` patterns without regex escaping.
  bool raw = false;

  bool operator==(const TemplateInput&) const = default;
};

/// A natural-language question paired with a graph query; both carry
/// positional placeholders {0}, {1}, ... filled from `inputs`.
struct QueryTemplate {
  std::string gid;
  std::map<std::string, std::string> texts;   // language -> question
  std::map<std::string, std::string> groups;  // language -> group name
  std::string cypher;
  std::vector<TemplateInput> inputs;
  std::vector<std::string> outputs;

  bool operator==(const QueryTemplate&) const = default;
};

/// One `{N}` occurrence in a template string.
struct Placeholder {
  std::size_t index = 0;
  std::size_t offset = 0;  // byte offset of '{'
  std::size_t length = 0;  // bytes spanned, braces included
};

/// Every `{N}` occurrence in `text`, in order of appearance.
std::vector<Placeholder> find_placeholders(std::string_view text);

/// Parses and validates a template file (a JSON list of template objects).
std::vector<QueryTemplate> parse_templates(std::string_view bytes);

}  // namespace lemmagraph::ingest
