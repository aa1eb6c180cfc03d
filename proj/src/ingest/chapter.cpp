// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/ingest/chapter.hpp"

#include <nlohmann/json.hpp>

#include "lemmagraph/error.hpp"

namespace lemmagraph::ingest {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Validation, "line " + std::to_string(line) + ": " + what, line);
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                ParseMode mode, std::size_t line, std::string_view where) {
  if (mode == ParseMode::Lenient) return;
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) invalid(line, "unknown key '" + key + "' in " + std::string(where));
  }
}

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) invalid(line, std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

LineAnalysis parse_analysis(const json& a, ParseMode mode, std::size_t line) {
  if (!a.is_object()) invalid(line, "'analysis' must be an object");
  check_keys(a, {"source", "text", "tokens"}, mode, line, "analysis");
  LineAnalysis out;
  out.source = optional_string(a, "source", line).value_or("");
  out.text = optional_string(a, "text", line).value_or("");
  if (auto it = a.find("tokens"); it != a.end() && !it->is_null()) {
    if (!it->is_array()) invalid(line, "'analysis.tokens' must be a list");
    for (const auto& token : *it) {
      if (!token.is_object()) invalid(line, "analysis token must be an object");
      TokenAttributes attrs;
      for (const auto& [key, value] : token.items()) {
        if (!value.is_string()) {
          invalid(line, "analysis token attribute '" + key + "' must be a string");
        }
        attrs.emplace_back(key, value.get<std::string>());
      }
      out.tokens.push_back(std::move(attrs));
    }
  }
  return out;
}

LineRecord parse_line(const json& obj, ParseMode mode, std::size_t line) {
  if (!obj.is_object()) invalid(line, "expected an object");
  check_keys(obj, {"text", "split", "verse", "analysis"}, mode, line, "line");
  LineRecord rec;
  auto text = obj.find("text");
  if (text == obj.end()) invalid(line, "missing required key 'text'");
  if (!text->is_string()) invalid(line, "'text' must be a string");
  rec.text = text->get<std::string>();
  if (rec.text.empty()) invalid(line, "'text' must be non-empty");
  rec.split = optional_string(obj, "split", line);
  if (auto v = obj.find("verse"); v != obj.end() && !v->is_null()) {
    if (v->is_string()) {
      rec.verse = v->get<std::string>();
    } else if (v->is_number()) {
      rec.verse = v->dump();
    } else {
      invalid(line, "'verse' must be a number or a string");
    }
  }
  if (auto a = obj.find("analysis"); a != obj.end() && !a->is_null()) {
    rec.analysis = parse_analysis(*a, mode, line);
  }
  return rec;
}

}  // namespace

std::vector<VerseGroup> ChapterFile::verse_groups() const {
  std::vector<VerseGroup> groups;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& mark = lines[i].verse;
    bool joins_previous = mark && !groups.empty() && groups.back().mark == mark;
    if (joins_previous) {
      groups.back().line_indices.push_back(i);
    } else {
      groups.push_back(VerseGroup{mark, {i}});
    }
  }
  return groups;
}

ChapterFile parse_chapter(std::string_view bytes, ParseMode mode) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed chapter JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_array()) throw Error(ErrorCode::Validation, "chapter must be a list of line objects");
  if (doc.empty()) throw Error(ErrorCode::Validation, "chapter must contain at least one line");
  ChapterFile out;
  out.lines.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) out.lines.push_back(parse_line(doc[i], mode, i));
  return out;
}

std::string serialize_chapter(const ChapterFile& chapter) {
  json doc = json::array();
  for (const auto& line : chapter.lines) {
    json obj = json::object();
    if (line.verse) obj["verse"] = *line.verse;
    obj["text"] = line.text;
    if (line.split) obj["split"] = *line.split;
    if (line.analysis) {
      json tokens = json::array();
      for (const auto& t : line.analysis->tokens) {
        json tok = json::object();
        for (const auto& [k, v] : t) tok[k] = v;
        tokens.push_back(std::move(tok));
      }
      obj["analysis"] = {{"source", line.analysis->source},
                         {"text", line.analysis->text},
                         {"tokens", std::move(tokens)}};
    }
    doc.push_back(std::move(obj));
  }
  return doc.dump(2);
}

IngestSummary ingest_chapter(store::Store& store, store::CorpusId corpus, const std::string& name,
                             const ChapterFile& chapter) {
  if (chapter.lines.empty()) {
    throw Error(ErrorCode::Validation, "chapter must contain at least one line");
  }
  return store.transact([&](store::Transaction& tx) {
    if (!tx.corpus(corpus)) throw Error(ErrorCode::NotFound, "no such corpus");
    IngestSummary summary;
    summary.chapter_id = tx.insert_chapter(corpus, name);
    for (const auto& group : chapter.verse_groups()) {
      auto verse = tx.insert_verse(summary.chapter_id, group.mark);
      ++summary.verses;
      for (std::size_t index : group.line_indices) {
        const auto& rec = chapter.lines[index];
        store::NewLine nl{verse, summary.chapter_id, static_cast<std::int64_t>(index), rec.text,
                          rec.split, std::nullopt, std::nullopt};
        if (rec.analysis) {
          nl.analysis_source = rec.analysis->source;
          nl.analysis_text = rec.analysis->text;
        }
        auto line_id = tx.insert_line(nl);
        ++summary.lines;
        if (!rec.analysis) continue;
        for (std::size_t pos = 0; pos < rec.analysis->tokens.size(); ++pos) {
          tx.insert_token(line_id, static_cast<std::int64_t>(pos), rec.analysis->tokens[pos]);
          ++summary.tokens;
        }
      }
    }
    return summary;
  });
}

}  // namespace lemmagraph::ingest
