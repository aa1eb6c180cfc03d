// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include <nlohmann/json.hpp>

#include "lemmagraph/qtemplate/qtemplate.hpp"

namespace lemmagraph::qtemplate {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const Table& table) {
  std::string out;
  auto record = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += "\r\n";
  };
  record(table.columns);
  for (const auto& row : table.rows) record(row);
  return out;
}

nlohmann::ordered_json build_json(const QueryOutcome& outcome) {
  nlohmann::ordered_json j;
  j["columns"] = outcome.table.columns;
  j["rows"] = outcome.table.rows;
  auto nodes = nlohmann::ordered_json::array();
  for (const auto& [id, node] : outcome.subgraph.nodes()) {
    nlohmann::ordered_json n;
    n["id"] = id;
    n["labels"] = node.labels;
    n["properties"] = graph::to_json(node.properties);
    nodes.push_back(std::move(n));
  }
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [id, edge] : outcome.subgraph.edges()) {
    nlohmann::ordered_json e;
    e["id"] = id;
    e["type"] = edge.type;
    e["source"] = edge.source;
    e["target"] = edge.target;
    e["properties"] = graph::to_json(edge.properties);
    edges.push_back(std::move(e));
  }
  j["subgraph"]["nodes"] = std::move(nodes);
  j["subgraph"]["edges"] = std::move(edges);
  return j;
}

std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string to_text(const Table& table) {
  std::vector<std::size_t> widths;
  for (const auto& c : table.columns) widths.push_back(display_width(c));
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], display_width(row[i]));
  }
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text += "  ";
      text += cells[i];
      if (i + 1 < cells.size()) text.append(widths[i] - display_width(cells[i]), ' ');
    }
    out += text + "\n";
  };
  line(table.columns);
  std::vector<std::string> rule;
  for (std::size_t w : widths) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : table.rows) line(row);
  return out;
}

}  // namespace

nlohmann::ordered_json result_json(const QueryOutcome& outcome) { return build_json(outcome); }

std::string_view to_string(ExportFormat format) {
  switch (format) {
    case ExportFormat::Csv: return "csv";
    case ExportFormat::Json: return "json";
    case ExportFormat::Text: return "text";
  }
  return "csv";
}

std::optional<ExportFormat> export_format_from_string(std::string_view s) {
  if (s == "csv") return ExportFormat::Csv;
  if (s == "json") return ExportFormat::Json;
  if (s == "text" || s == "txt") return ExportFormat::Text;
  return std::nullopt;
}

std::string_view content_type(ExportFormat format) {
  switch (format) {
    case ExportFormat::Csv: return "text/csv; charset=utf-8";
    case ExportFormat::Json: return "application/json";
    case ExportFormat::Text: return "text/plain; charset=utf-8";
  }
  return "application/octet-stream";
}

std::string export_result(const QueryOutcome& outcome, ExportFormat format) {
  switch (format) {
    case ExportFormat::Csv: return to_csv(outcome.table);
    case ExportFormat::Json: return build_json(outcome).dump() + "\n";
    case ExportFormat::Text: return to_text(outcome.table);
  }
  return {};
}

}  // namespace lemmagraph::qtemplate
