#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "line_explorer/io/exercise.hpp"

namespace line_explorer::grading {

// variable -> raw text as typed
using EntryRow = std::map<std::string, std::string>;

struct AnswerStep {
  std::size_t ordinal = 0;
  int line = 0;
  tracer::IterationVector iteration_claimed;
  EntryRow entries;

  bool operator==(const AnswerStep&) const = default;
};

struct EnterLineAction {
  int line = 0;
  std::optional<EntryRow> replaced_open;  // open row for `line` before the entry
  bool exit_loop = false;

  bool operator==(const EnterLineAction&) const = default;
};

struct MakeLoopAction {
  int target = 0;
  std::optional<int> cursor_before;  // nullopt: END
  std::map<int, EntryRow> cleared;

  bool operator==(const MakeLoopAction&) const = default;
};

using SessionAction = std::variant<EnterLineAction, MakeLoopAction>;

// What the session needs to know about its exercise. Nothing trace-derived.
struct SessionShape {
  std::string exercise_id;
  std::vector<int> executable_lines;
  std::vector<lang::LoopSpan> loops;
  std::vector<std::string> columns;

  static std::shared_ptr<const SessionShape> of(const io::PreparedExercise& exercise);
};

/// Evaluation-mode worksheet state. A value type: every operation returns the
/// successor state and leaves the receiver untouched, so the caller decides
/// when a transition is committed.
class EvalSession {
 public:
  // Throws GradingError ModeUnavailable for exercises without evaluation mode.
  static EvalSession begin(const io::PreparedExercise& exercise, std::string session_id);

  const std::string& session_id() const noexcept { return session_id_; }
  const std::string& exercise_id() const noexcept { return shape_->exercise_id; }
  const std::vector<std::string>& columns() const noexcept { return shape_->columns; }
  const std::vector<int>& executable_lines() const noexcept { return shape_->executable_lines; }

  std::optional<int> cursor_line() const noexcept { return cursor_; }  // nullopt: END
  bool at_end() const noexcept { return !cursor_; }
  int iteration_indicator() const noexcept { return iteration_; }
  const std::map<int, EntryRow>& open_entries() const noexcept { return open_; }
  const std::vector<AnswerStep>& archived_answers() const noexcept { return archived_; }
  const std::vector<SessionAction>& action_stack() const noexcept { return actions_; }
  // Rows handed back by undoing an entry, for the UI to prefill.
  const std::map<int, EntryRow>& draft_entries() const noexcept { return drafts_; }
  bool submitted() const noexcept { return submitted_; }

  // Iteration the next entry would claim at the cursor.
  tracer::IterationVector claimed_iteration() const;
  // Lines make_loop accepts right now, ascending.
  std::vector<int> loop_targets() const;
  // Whether enter_line(…, exit_loop = true) is accepted at the cursor.
  bool can_exit_loop() const;

  /// Locks `entries` for the cursor line and advances to the next executable
  /// line. With `exit_loop` at a `while` line the cursor moves past the loop's
  /// closing brace instead. Throws SessionComplete, MissingColumns,
  /// tracer::UnknownVariable, InvalidExit, AlreadySubmitted.
  EvalSession enter_line(const EntryRow& entries, bool exit_loop = false) const;
  // Throws NothingToUndo, AlreadySubmitted.
  EvalSession undo() const;
  // Throws InvalidTarget, AlreadySubmitted.
  EvalSession make_loop(int target_line) const;

  bool can_submit() const noexcept { return at_end() && !submitted_; }
  // The frozen session. Throws NotComplete, AlreadySubmitted.
  EvalSession freeze() const;

  // Cursor, iteration, open entries, archived answers, actions, submitted flag.
  bool observably_equal(const EvalSession& other) const;

 private:
  EvalSession() = default;
  void require_open() const;
  std::optional<int> next_executable_after(int line) const;
  const lang::LoopSpan* innermost_loop(int line) const;

  std::shared_ptr<const SessionShape> shape_;
  std::string session_id_;
  std::optional<int> cursor_;
  int iteration_ = 1;
  std::map<int, EntryRow> open_;
  std::vector<AnswerStep> archived_;
  std::vector<SessionAction> actions_;
  std::map<int, EntryRow> drafts_;
  bool submitted_ = false;
};

}  // namespace line_explorer::grading
