// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lemmagraph/graph/property_graph.hpp"
#include "lemmagraph/ingest/templates.hpp"
#include "lemmagraph/qengine/evaluator.hpp"

namespace lemmagraph::qtemplate {

/// A template filled with concrete inputs.
struct TemplateInstance {
  std::string gid;
  std::string language;
  std::vector<std::string> inputs;
  std::string question;
  std::string query;

  bool operator==(const TemplateInstance&) const = default;
};

/// Escapes ECMAScript regex metacharacters so the pattern matches `text` literally.
std::string regex_escape(std::string_view text);

/// Fills the question for `language` and the query with `inputs`.
///
/// Inside a string literal that is the right operand of `=~` the input is
/// regex-escaped unless the input is marked raw. Outside literals an input is
/// emitted bare when it is a plain identifier or number and backtick-quoted
/// otherwise. Inputs containing quote characters or placeholders are
/// rejected. Throws Arity, Validation, RejectedInput, or TemplateDefinition
/// when the rendered query does not parse.
TemplateInstance instantiate(const ingest::QueryTemplate& tmpl, const std::string& language,
                             const std::vector<std::string>& inputs);

/// Tabular rendering of a result: nodes as `lemma (Label, ...)`, edges as
/// `TYPE` or `TYPE (detail)`.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const Table&) const = default;
};

struct QueryOutcome {
  std::optional<TemplateInstance> instance;
  std::string query;
  qengine::ResultSet result;
  Table table;
  graph::PropertyGraph subgraph;
};

/// Projects `result` to `outputs` (all result columns when empty). Output
/// names not bound by the query are skipped. Rows are de-duplicated.
Table tabulate(const graph::PropertyGraph& graph, const qengine::ResultSet& result,
               const std::vector<std::string>& outputs);

QueryOutcome run(const qengine::GraphIndex& index, const ingest::QueryTemplate& tmpl,
                 const std::string& language, const std::vector<std::string>& inputs);
QueryOutcome run(const graph::PropertyGraph& graph, const ingest::QueryTemplate& tmpl,
                 const std::string& language, const std::vector<std::string>& inputs);

/// Runs free query text; the table carries every returned column.
QueryOutcome run_query(const qengine::GraphIndex& index, std::string_view text);

enum class ExportFormat { Csv, Json, Text };

std::string_view to_string(ExportFormat format);
std::optional<ExportFormat> export_format_from_string(std::string_view s);
/// MIME type served for the format.
std::string_view content_type(ExportFormat format);

/// {columns, rows, subgraph{nodes, edges}} with rows as rendered cells.
nlohmann::ordered_json result_json(const QueryOutcome& outcome);

/// Byte-deterministic rendering. CSV follows RFC 4180 with a header row and
/// CRLF record ends; JSON is {columns, rows, subgraph{nodes, edges}}; text is
/// aligned fixed-width columns.
std::string export_result(const QueryOutcome& outcome, ExportFormat format);

}  // namespace lemmagraph::qtemplate
