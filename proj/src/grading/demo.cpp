#include "line_explorer/grading/demo.hpp"

#include "line_explorer/grading/canonical.hpp"
#include "line_explorer/grading/errors.hpp"

namespace line_explorer::grading {

namespace {

const tracer::TraceStep& demo_step(const io::PreparedExercise& ex, int line,
                                   const tracer::IterationVector& iteration) {
  if (!ex.exercise().has_mode(io::ExerciseMode::Demonstration)) {
    throw GradingError("ModeUnavailable", "exercise '" + ex.id() + "' has no demonstration mode");
  }
  const tracer::TraceStep* step = ex.trace().find(line, iteration);
  if (!step) {
    std::string at = iteration.empty() ? "" : " iteration " + tracer::dotted(iteration);
    throw GradingError("UnknownCell", "line " + std::to_string(line) + at + " never executes");
  }
  return *step;
}

std::optional<lang::Value> cell(const tracer::TraceStep& step, const std::string& column) {
  auto it = step.env_after.find(column);
  if (it == step.env_after.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Correct: return "correct";
    case VerdictKind::Incorrect: return "incorrect";
    case VerdictKind::NotExecuted: return "not_executed";
  }
  return "incorrect";
}

CellVerdict check_cell(const io::PreparedExercise& exercise, int line,
                       const tracer::IterationVector& iteration, std::string_view variable,
                       std::string_view entered) {
  const tracer::TraceStep& step = demo_step(exercise, line, iteration);
  if (!exercise.trace().has_column(variable)) throw tracer::UnknownVariable(std::string(variable));
  if (entry_matches(entered, cell(step, std::string(variable)))) return {VerdictKind::Correct, false};
  // A check only colours the box; the value stays hidden until `show`.
  return {VerdictKind::Incorrect, true};
}

RevealedRow reveal_cells(const io::PreparedExercise& exercise, int line,
                         const tracer::IterationVector& iteration) {
  const tracer::TraceStep& step = demo_step(exercise, line, iteration);
  RevealedRow row;
  for (const auto& c : exercise.columns()) row[c] = cell(step, c);
  return row;
}

}  // namespace line_explorer::grading
