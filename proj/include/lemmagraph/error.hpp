// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lemmagraph {

enum class ErrorCode {
  Validation,
  Parse,
  NotFound,
  Duplicate,
  Constraint,
  Authentication,
  Authorization,
  Ontology,
  InUse,
  Arity,
  RejectedInput,
  TemplateDefinition,
  Syntax,
  Semantic,
  Evaluation,
  DanglingEdge,
  UnrecoverableStore,
  Io,
  Config,
};

std::string_view to_string(ErrorCode code);

/// Every failure the library reports is an Error. `position` carries a byte
/// offset (parsers) or a 1-based line number (line-oriented formats) when the
/// failure can be pinned to a location in the input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(message), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::size_t>& position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace lemmagraph
