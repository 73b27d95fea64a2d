#pragma once

#include <optional>
#include <string>
#include <vector>

#include "line_explorer/grading/demo.hpp"
#include "line_explorer/grading/eval_session.hpp"

namespace line_explorer::grading {

struct CellResult {
  std::string variable;
  CellVerdict verdict;
  std::string entered;
  std::optional<std::string> expected;  // rendered truth; nullopt when unassigned or no truth step

  bool operator==(const CellResult&) const = default;
};

struct StepResult {
  std::size_t ordinal = 0;
  std::optional<int> answered_line;  // nullopt: the student stopped before this step
  std::optional<int> truth_line;     // nullopt: the truth ended before this step
  std::vector<CellResult> cells;

  bool operator==(const StepResult&) const = default;
};

struct SubmissionResult {
  int total_cells = 0;
  int correct_cells = 0;
  int path_matched_steps = 0;
  int truth_steps = 0;
  double score_percent = 100.0;
  std::vector<StepResult> per_step;

  bool operator==(const SubmissionResult&) const = default;
};

/// Positional grading: answer k is compared with truth step k. A cell is
/// correct when the lines agree and the entry matches the truth value.
/// Answers past the end of the truth are NotExecuted and count for nothing.
SubmissionResult grade(const std::vector<AnswerStep>& answers, const io::PreparedExercise& exercise);

struct Submitted {
  EvalSession session;  // frozen
  SubmissionResult result;
};

// Throws NotComplete, AlreadySubmitted.
Submitted submit(const EvalSession& session, const io::PreparedExercise& exercise);

}  // namespace line_explorer::grading
