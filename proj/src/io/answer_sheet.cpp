#include "line_explorer/io/answer_sheet.hpp"

#include <charconv>

#include "line_explorer/io/json_codec.hpp"
#include "line_explorer/io/submission_record.hpp"

namespace line_explorer::io {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) return out;
    start = tab + 1;
  }
}

std::vector<grading::AnswerStep> parse_json_sheet(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw AnswerSheetError("answer file is not valid JSON");
  if (j.is_object() && j.contains("answers")) j = j["answers"];
  if (!j.is_array()) throw AnswerSheetError("expected a list of answers");
  std::vector<grading::AnswerStep> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    try {
      out.push_back(answer_step_from_json(j[i]));
    } catch (const std::exception& e) {
      throw AnswerSheetError("answer " + std::to_string(i) + ": " + e.what());
    }
    out.back().ordinal = i;
  }
  return out;
}

std::vector<grading::AnswerStep> parse_tsv_sheet(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw AnswerSheetError("answer file is empty");

  const auto header = split_tabs(lines[0]);
  int line_col = -1, iter_col = -1;
  std::vector<std::pair<int, std::string>> vars;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "line") {
      line_col = static_cast<int>(c);
    } else if (header[c] == "iter") {
      iter_col = static_cast<int>(c);
    } else if (header[c] != "step") {
      if (header[c].empty()) throw AnswerSheetError("header column " + std::to_string(c + 1) + " is empty");
      vars.emplace_back(static_cast<int>(c), header[c]);
    }
  }
  if (line_col < 0) throw AnswerSheetError("header has no 'line' column");

  std::vector<grading::AnswerStep> out;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::string where = "line " + std::to_string(r + 1);
    auto fields = split_tabs(lines[r]);
    if (fields.size() != header.size()) {
      throw AnswerSheetError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                             std::to_string(fields.size()));
    }
    grading::AnswerStep step;
    step.ordinal = out.size();
    const std::string& ln = fields[line_col];
    auto [ptr, ec] = std::from_chars(ln.data(), ln.data() + ln.size(), step.line);
    if (ec != std::errc() || ptr != ln.data() + ln.size() || step.line < 1) {
      throw AnswerSheetError(where + ": bad line number '" + ln + "'");
    }
    if (iter_col >= 0) {
      auto iv = tracer::parse_dotted(fields[iter_col]);
      if (!iv) throw AnswerSheetError(where + ": bad iteration '" + fields[iter_col] + "'");
      step.iteration_claimed = *iv;
    }
    for (const auto& [c, name] : vars) step.entries[name] = fields[c];
    out.push_back(std::move(step));
  }
  return out;
}

}  // namespace

std::vector<grading::AnswerStep> parse_answer_sheet(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && (text[first] == '[' || text[first] == '{')) return parse_json_sheet(text);
  return parse_tsv_sheet(text);
}

}  // namespace line_explorer::io
