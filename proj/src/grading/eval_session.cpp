#include "line_explorer/grading/eval_session.hpp"

#include <algorithm>

#include "line_explorer/grading/errors.hpp"

namespace line_explorer::grading {

std::shared_ptr<const SessionShape> SessionShape::of(const io::PreparedExercise& exercise) {
  auto shape = std::make_shared<SessionShape>();
  shape->exercise_id = exercise.id();
  shape->executable_lines = lang::executable_lines(exercise.program());
  shape->loops = lang::loop_spans(exercise.program());
  shape->columns = exercise.columns();
  return shape;
}

EvalSession EvalSession::begin(const io::PreparedExercise& exercise, std::string session_id) {
  if (!exercise.exercise().has_mode(io::ExerciseMode::Evaluation)) {
    throw GradingError("ModeUnavailable", "exercise '" + exercise.id() + "' has no evaluation mode");
  }
  EvalSession s;
  s.shape_ = SessionShape::of(exercise);
  s.session_id_ = std::move(session_id);
  if (!s.shape_->executable_lines.empty()) s.cursor_ = s.shape_->executable_lines.front();
  return s;
}

void EvalSession::require_open() const {
  if (submitted_) throw GradingError("AlreadySubmitted", "session " + session_id_ + " was submitted");
}

std::optional<int> EvalSession::next_executable_after(int line) const {
  const auto& lines = shape_->executable_lines;
  auto it = std::upper_bound(lines.begin(), lines.end(), line);
  if (it == lines.end()) return std::nullopt;
  return *it;
}

const lang::LoopSpan* EvalSession::innermost_loop(int line) const {
  const lang::LoopSpan* best = nullptr;
  for (const auto& loop : shape_->loops) {
    if (loop.contains(line) && (!best || loop.depth > best->depth)) best = &loop;
  }
  return best;
}

tracer::IterationVector EvalSession::claimed_iteration() const {
  if (!cursor_) return {};
  const lang::LoopSpan* loop = innermost_loop(*cursor_);
  if (!loop) return {};
  int passes = 1;
  for (const auto& a : actions_) {
    if (const auto* m = std::get_if<MakeLoopAction>(&a); m && loop->contains(m->target)) ++passes;
  }
  return {passes};
}

std::vector<int> EvalSession::loop_targets() const {
  std::vector<int> out;
  if (submitted_) return out;
  for (int line : shape_->executable_lines) {
    if (cursor_ && line >= *cursor_) break;
    bool answered = std::any_of(archived_.begin(), archived_.end(),
                                [&](const AnswerStep& a) { return a.line == line; });
    if (answered) out.push_back(line);
  }
  return out;
}

bool EvalSession::can_exit_loop() const {
  if (!cursor_ || submitted_) return false;
  return std::any_of(shape_->loops.begin(), shape_->loops.end(),
                     [&](const lang::LoopSpan& l) { return l.head_line == *cursor_; });
}

EvalSession EvalSession::enter_line(const EntryRow& entries, bool exit_loop) const {
  require_open();
  if (!cursor_) throw GradingError("SessionComplete", "the cursor is past the last line");
  std::string missing;
  for (const auto& c : shape_->columns) {
    if (!entries.count(c)) missing += (missing.empty() ? "" : ", ") + c;
  }
  if (!missing.empty()) throw GradingError("MissingColumns", "missing entries for: " + missing);
  for (const auto& [name, _] : entries) {
    if (std::find(shape_->columns.begin(), shape_->columns.end(), name) == shape_->columns.end()) {
      throw tracer::UnknownVariable(name);
    }
  }

  const int line = *cursor_;
  std::optional<int> next = next_executable_after(line);
  if (exit_loop) {
    auto loop = std::find_if(shape_->loops.begin(), shape_->loops.end(),
                             [&](const lang::LoopSpan& l) { return l.head_line == line; });
    if (loop == shape_->loops.end()) {
      throw GradingError("InvalidExit", "line " + std::to_string(line) + " is not a loop condition");
    }
    next = next_executable_after(loop->close_line);
  }

  EvalSession s = *this;
  s.drafts_.clear();
  EnterLineAction action{line, std::nullopt, exit_loop};
  if (auto it = s.open_.find(line); it != s.open_.end()) action.replaced_open = it->second;
  s.archived_.push_back({s.archived_.size(), line, claimed_iteration(), entries});
  s.open_[line] = entries;
  s.actions_.push_back(std::move(action));
  s.cursor_ = next;
  return s;
}

EvalSession EvalSession::make_loop(int target_line) const {
  require_open();
  auto targets = loop_targets();
  if (!std::binary_search(targets.begin(), targets.end(), target_line)) {
    throw GradingError("InvalidTarget", "cannot loop back to line " + std::to_string(target_line));
  }
  EvalSession s = *this;
  s.drafts_.clear();
  MakeLoopAction action{target_line, cursor_, {}};
  for (auto it = s.open_.lower_bound(target_line); it != s.open_.end();) {
    action.cleared.insert(*it);
    it = s.open_.erase(it);
  }
  s.actions_.push_back(std::move(action));
  s.cursor_ = target_line;
  s.iteration_ += 1;
  return s;
}

EvalSession EvalSession::undo() const {
  require_open();
  if (actions_.empty()) throw GradingError("NothingToUndo", "nothing to undo");
  EvalSession s = *this;
  SessionAction last = std::move(s.actions_.back());
  s.actions_.pop_back();
  s.drafts_.clear();
  if (auto* enter = std::get_if<EnterLineAction>(&last)) {
    s.drafts_[enter->line] = s.archived_.back().entries;
    s.archived_.pop_back();
    if (enter->replaced_open) {
      s.open_[enter->line] = *enter->replaced_open;
    } else {
      s.open_.erase(enter->line);
    }
    s.cursor_ = enter->line;
  } else {
    auto& loop = std::get<MakeLoopAction>(last);
    for (auto& row : loop.cleared) s.open_.insert_or_assign(row.first, std::move(row.second));
    s.cursor_ = loop.cursor_before;
    s.iteration_ -= 1;
  }
  return s;
}

EvalSession EvalSession::freeze() const {
  require_open();
  if (!at_end()) {
    throw GradingError("NotComplete", "submit is available once every line has been entered");
  }
  EvalSession s = *this;
  s.drafts_.clear();
  s.submitted_ = true;
  return s;
}

bool EvalSession::observably_equal(const EvalSession& o) const {
  return cursor_ == o.cursor_ && iteration_ == o.iteration_ && open_ == o.open_ &&
         archived_ == o.archived_ && actions_ == o.actions_ && submitted_ == o.submitted_;
}

}  // namespace line_explorer::grading
