#include "line_explorer/io/json_codec.hpp"

#include <chrono>
#include <ctime>

namespace line_explorer::io {

namespace {

std::string_view verdict_name(grading::VerdictKind k) { return grading::to_string(k); }

grading::VerdictKind verdict_from(const std::string& s) {
  if (s == "correct") return grading::VerdictKind::Correct;
  if (s == "not_executed") return grading::VerdictKind::NotExecuted;
  if (s == "incorrect") return grading::VerdictKind::Incorrect;
  throw StorageError("unknown verdict '" + s + "'");
}

Json optional_line(const std::optional<int>& line) { return line ? Json(*line) : Json(nullptr); }

std::optional<int> optional_line_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

Json rows_json(const std::map<int, grading::EntryRow>& rows) {
  Json out = Json::object();
  for (const auto& [line, row] : rows) out[std::to_string(line)] = row;
  return out;
}

}  // namespace

std::string utc_timestamp() {
  using namespace std::chrono;
  auto now = system_clock::now();
  std::time_t t = system_clock::to_time_t(now);
  auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

Json to_json(const lang::Value& value) {
  if (value.is_bool()) return value.as_bool();
  return value.as_int();
}

Json to_json(const std::optional<lang::Value>& value) { return value ? to_json(*value) : Json(nullptr); }

Json to_json(const tracer::TraceStep& step, const std::vector<std::string>& columns) {
  Json values = Json::object();
  for (const auto& c : columns) {
    auto it = step.env_after.find(c);
    values[c] = it == step.env_after.end() ? Json(nullptr) : to_json(it->second);
  }
  return Json{{"step", step.step_index},
              {"line", step.line},
              {"iteration", step.iteration},
              {"values", std::move(values)},
              {"next_line", optional_line(step.next_line)}};
}

Json to_json(const tracer::WorksheetLayout& layout) {
  Json lines = Json::array();
  for (const auto& l : layout.lines) lines.push_back({{"line", l.line}, {"iterations", l.iterations}});
  return Json{{"columns", layout.columns}, {"lines", std::move(lines)}};
}

Json to_json(const grading::AnswerStep& s) {
  return Json{{"ordinal", s.ordinal}, {"line", s.line}, {"iteration_claimed", s.iteration_claimed},
              {"entries", s.entries}};
}

grading::AnswerStep answer_step_from_json(const Json& j) {
  grading::AnswerStep s;
  s.ordinal = j.at("ordinal").get<std::size_t>();
  s.line = j.at("line").get<int>();
  s.iteration_claimed = j.at("iteration_claimed").get<std::vector<int>>();
  s.entries = j.at("entries").get<grading::EntryRow>();
  return s;
}

Json to_json(const grading::SubmissionResult& r) {
  Json steps = Json::array();
  for (const auto& step : r.per_step) {
    Json cells = Json::array();
    for (const auto& c : step.cells) {
      cells.push_back({{"variable", c.variable},
                       {"verdict", verdict_name(c.verdict.kind)},
                       {"expected_hidden", c.verdict.expected_hidden},
                       {"entered", c.entered},
                       {"expected", c.expected ? Json(*c.expected) : Json(nullptr)}});
    }
    steps.push_back({{"ordinal", step.ordinal},
                     {"answered_line", optional_line(step.answered_line)},
                     {"truth_line", optional_line(step.truth_line)},
                     {"cells", std::move(cells)}});
  }
  return Json{{"total_cells", r.total_cells},         {"correct_cells", r.correct_cells},
              {"path_matched_steps", r.path_matched_steps}, {"truth_steps", r.truth_steps},
              {"score_percent", r.score_percent},     {"per_step", std::move(steps)}};
}

grading::SubmissionResult submission_result_from_json(const Json& j) {
  grading::SubmissionResult r;
  r.total_cells = j.at("total_cells").get<int>();
  r.correct_cells = j.at("correct_cells").get<int>();
  r.path_matched_steps = j.at("path_matched_steps").get<int>();
  r.truth_steps = j.at("truth_steps").get<int>();
  r.score_percent = j.at("score_percent").get<double>();
  for (const auto& s : j.at("per_step")) {
    grading::StepResult step;
    step.ordinal = s.at("ordinal").get<std::size_t>();
    step.answered_line = optional_line_from(s.at("answered_line"));
    step.truth_line = optional_line_from(s.at("truth_line"));
    for (const auto& c : s.at("cells")) {
      grading::CellResult cell;
      cell.variable = c.at("variable").get<std::string>();
      cell.verdict = {verdict_from(c.at("verdict").get<std::string>()), c.at("expected_hidden").get<bool>()};
      cell.entered = c.at("entered").get<std::string>();
      if (!c.at("expected").is_null()) cell.expected = c.at("expected").get<std::string>();
      step.cells.push_back(std::move(cell));
    }
    r.per_step.push_back(std::move(step));
  }
  return r;
}

Json to_json(const StoredSubmission& sub) {
  Json answers = Json::array();
  for (const auto& a : sub.answers) answers.push_back(to_json(a));
  return Json{{"format_version", kSubmissionFormatVersion},
              {"receipt_id", sub.receipt_id},
              {"exercise_id", sub.exercise_id},
              {"session_id", sub.session_id},
              {"started_at", sub.started_at},
              {"submitted_at", sub.submitted_at},
              {"respondent", sub.respondent ? Json(*sub.respondent) : Json(nullptr)},
              {"answers", std::move(answers)},
              {"result", to_json(sub.result)}};
}

StoredSubmission stored_submission_from_json(const Json& j) {
  try {
    if (j.at("format_version").get<int>() != kSubmissionFormatVersion) {
      throw StorageError("unsupported submission format_version");
    }
    StoredSubmission s;
    s.receipt_id = j.at("receipt_id").get<std::string>();
    s.exercise_id = j.at("exercise_id").get<std::string>();
    s.session_id = j.at("session_id").get<std::string>();
    s.started_at = j.at("started_at").get<std::string>();
    s.submitted_at = j.at("submitted_at").get<std::string>();
    if (!j.at("respondent").is_null()) s.respondent = j.at("respondent").get<std::string>();
    for (const auto& a : j.at("answers")) s.answers.push_back(answer_step_from_json(a));
    s.result = submission_result_from_json(j.at("result"));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw StorageError(std::string("malformed submission record: ") + e.what());
  }
}

Json session_view(const grading::EvalSession& s, long long revision) {
  Json answers = Json::array();
  for (const auto& a : s.archived_answers()) answers.push_back(to_json(a));
  return Json{{"session_id", s.session_id()},
              {"exercise_id", s.exercise_id()},
              {"revision", revision},
              {"cursor_line", optional_line(s.cursor_line())},
              {"iteration_indicator", s.iteration_indicator()},
              {"claimed_iteration", s.claimed_iteration()},
              {"open_entries", rows_json(s.open_entries())},
              {"draft_entries", rows_json(s.draft_entries())},
              {"archived_answers", std::move(answers)},
              {"loop_targets", s.loop_targets()},
              {"can_exit_loop", s.can_exit_loop()},
              {"can_undo", !s.action_stack().empty() && !s.submitted()},
              {"can_submit", s.can_submit()},
              {"submitted", s.submitted()}};
}

}  // namespace line_explorer::io
