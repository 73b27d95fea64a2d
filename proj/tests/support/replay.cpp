#include "replay.hpp"

#include "line_explorer/io/exercise_doc.hpp"
#include "line_explorer/lang/parser.hpp"
#include "paths.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace line_explorer::support {

using grading::EntryRow;
using grading::EvalSession;

io::PreparedExercise prepare_inline(const std::string& id, std::string_view source,
                                    std::set<io::ExerciseMode> modes, lang::Environment env,
                                    int max_steps) {
  io::Exercise ex;
  ex.id = id;
  ex.title = id;
  ex.source = lang::SourceProgram(source);
  ex.modes = std::move(modes);
  ex.initial_env = std::move(env);
  ex.limits.max_steps = max_steps;
  if (ex.has_mode(io::ExerciseMode::Demonstration)) {
    for (int line : lang::executable_lines(lang::parse(ex.source))) ex.media.audio[line] = std::nullopt;
  }
  return io::PreparedExercise::prepare(std::move(ex));
}

std::vector<io::PreparedExercise> shipped_with_mode(io::ExerciseMode mode) {
  std::vector<io::PreparedExercise> out;
  for (const auto& path : shipped_exercises()) {
    auto ex = io::load_exercise(path);
    if (ex.exercise().has_mode(mode)) out.push_back(std::move(ex));
  }
  return out;
}

std::vector<EntryRow> truth_rows(const io::PreparedExercise& exercise) {
  std::vector<EntryRow> rows;
  for (const auto& step : exercise.trace().steps) {
    EntryRow row;
    for (const auto& c : exercise.columns()) {
      auto it = step.env_after.find(c);
      row[c] = it == step.env_after.end() ? "" : it->second.render();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

EvalSession replay_truth(const io::PreparedExercise& exercise, EvalSession s,
                         const std::vector<EntryRow>& rows) {
  const auto& steps = exercise.trace().steps;
  const auto& lines = s.executable_lines();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& step = steps[k];
    if (s.cursor_line() != step.line) {
      if (s.cursor_line() && *s.cursor_line() < step.line) {
        throw std::logic_error("replay: truth moves forward past line " + std::to_string(*s.cursor_line()));
      }
      s = s.make_loop(step.line);
    }
    auto natural = std::upper_bound(lines.begin(), lines.end(), step.line);
    std::optional<int> natural_next = natural == lines.end() ? std::nullopt : std::optional<int>(*natural);
    bool forward_skip = step.next_line != natural_next &&
                        (!step.next_line || *step.next_line > step.line);
    s = s.enter_line(rows.at(k), forward_skip && s.can_exit_loop());
  }
  return s;
}

std::string perturb(const std::string& entry) {
  if (entry.empty()) return "0";
  if (entry == "true") return "false";
  if (entry == "false") return "true";
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(entry.data(), entry.data() + entry.size(), v);
  if (ec != std::errc() || end != entry.data() + entry.size()) return "";
  return std::to_string(v == std::numeric_limits<std::int64_t>::max() ? v - 1 : v + 1);
}

namespace {

int make_loop_count(const EvalSession& s) {
  return static_cast<int>(std::count_if(s.action_stack().begin(), s.action_stack().end(), [](const auto& a) {
    return std::holds_alternative<grading::MakeLoopAction>(a);
  }));
}

std::string describe(const EvalSession& s) {
  std::string out = "cursor=" + (s.cursor_line() ? std::to_string(*s.cursor_line()) : std::string("END")) +
                    " iteration=" + std::to_string(s.iteration_indicator()) +
                    " archived=" + std::to_string(s.archived_answers().size()) +
                    " open=" + std::to_string(s.open_entries().size());
  return out;
}

EntryRow random_row(const EvalSession& s, std::mt19937_64& rng) {
  static const char* pool[] = {"", "0", "1", "2", "-3", "05", "true", "False", " 7 ", "x"};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
  EntryRow row;
  for (const auto& c : s.columns()) row[c] = pool[pick(rng)];
  return row;
}

}  // namespace

std::string check_undo_inverse(const io::PreparedExercise& exercise, std::mt19937_64& rng, int length,
                               UndoCheckStats* stats) {
  EvalSession s = EvalSession::begin(exercise, "walk");
  for (int i = 0; i < length; ++i) {
    if (s.iteration_indicator() != 1 + make_loop_count(s)) {
      return "iteration bookkeeping broken at action " + std::to_string(i) + ": " + describe(s);
    }
    std::vector<int> choices;
    if (!s.at_end()) choices.push_back(0);
    if (!s.loop_targets().empty()) choices.push_back(1);
    if (!s.action_stack().empty()) choices.push_back(2);
    if (choices.empty()) break;
    int choice = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];

    if (choice == 2) {
      s = s.undo();
      if (stats) ++stats->undos;
      continue;
    }
    EvalSession next = s;
    if (choice == 0) {
      bool exit_loop = s.can_exit_loop() && std::bernoulli_distribution(0.4)(rng);
      next = s.enter_line(random_row(s, rng), exit_loop);
    } else {
      auto targets = s.loop_targets();
      next = s.make_loop(targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)]);
      if (stats) ++stats->make_loops;
    }
    if (stats) ++stats->applied;
    EvalSession back = next.undo();
    if (!back.observably_equal(s)) {
      return "undo did not restore state at action " + std::to_string(i) + ": before " + describe(s) +
             ", after undo " + describe(back);
    }
    s = next;
  }
  return "";
}

}  // namespace line_explorer::support
