#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "line_explorer/io/exercise.hpp"

namespace line_explorer::grading {

enum class VerdictKind { Correct, Incorrect, NotExecuted };

std::string_view to_string(VerdictKind kind);

struct CellVerdict {
  VerdictKind kind = VerdictKind::Correct;
  // Set on Incorrect when the verdict itself does not disclose the truth value.
  bool expected_hidden = false;

  bool operator==(const CellVerdict&) const = default;
};

using RevealedRow = std::map<std::string, std::optional<lang::Value>>;

// Compares one worksheet entry with the truth cell at (line, iteration).
// Throws GradingError ModeUnavailable / UnknownCell, or tracer::UnknownVariable.
CellVerdict check_cell(const io::PreparedExercise& exercise, int line,
                       const tracer::IterationVector& iteration, std::string_view variable,
                       std::string_view entered);

// Every column's truth value after the step at (line, iteration); nullopt for
// variables not yet assigned there.
RevealedRow reveal_cells(const io::PreparedExercise& exercise, int line,
                         const tracer::IterationVector& iteration);

}  // namespace line_explorer::grading
