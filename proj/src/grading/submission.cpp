#include "line_explorer/grading/submission.hpp"

#include <algorithm>

#include "line_explorer/grading/canonical.hpp"

namespace line_explorer::grading {

SubmissionResult grade(const std::vector<AnswerStep>& answers, const io::PreparedExercise& exercise) {
  const auto& truth = exercise.trace().steps;
  const auto& columns = exercise.columns();

  SubmissionResult r;
  r.truth_steps = static_cast<int>(truth.size());
  r.total_cells = r.truth_steps * static_cast<int>(columns.size());

  const std::size_t n = std::max(answers.size(), truth.size());
  for (std::size_t k = 0; k < n; ++k) {
    const AnswerStep* a = k < answers.size() ? &answers[k] : nullptr;
    const tracer::TraceStep* t = k < truth.size() ? &truth[k] : nullptr;
    StepResult step;
    step.ordinal = k;
    if (a) step.answered_line = a->line;
    if (t) step.truth_line = t->line;
    const bool same_line = a && t && a->line == t->line;
    if (same_line) ++r.path_matched_steps;

    for (const auto& c : columns) {
      CellResult cell;
      cell.variable = c;
      if (a) {
        if (auto it = a->entries.find(c); it != a->entries.end()) cell.entered = it->second;
      }
      std::optional<lang::Value> expected;
      if (t) {
        if (auto it = t->env_after.find(c); it != t->env_after.end()) expected = it->second;
        if (expected) cell.expected = expected->render();
      }
      if (!t) {
        cell.verdict = {VerdictKind::NotExecuted, false};
      } else if (same_line && entry_matches(cell.entered, expected)) {
        cell.verdict = {VerdictKind::Correct, false};
        ++r.correct_cells;
      } else {
        cell.verdict = {VerdictKind::Incorrect, false};
      }
      step.cells.push_back(std::move(cell));
    }
    r.per_step.push_back(std::move(step));
  }
  r.score_percent = r.total_cells > 0 ? 100.0 * r.correct_cells / r.total_cells : 100.0;
  return r;
}

Submitted submit(const EvalSession& session, const io::PreparedExercise& exercise) {
  EvalSession frozen = session.freeze();
  SubmissionResult result = grade(frozen.archived_answers(), exercise);
  return {std::move(frozen), std::move(result)};
}

}  // namespace line_explorer::grading
