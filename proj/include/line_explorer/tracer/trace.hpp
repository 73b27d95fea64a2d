#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "line_explorer/error.hpp"
#include "line_explorer/lang/ast.hpp"
#include "line_explorer/lang/value.hpp"

namespace line_explorer::tracer {

using lang::Environment;
using lang::Value;

// One iteration count per enclosing `while`, outermost first, innermost last.
// Counts start at 1; the failing exit check belongs to the last count.
using IterationVector = std::vector<int>;

// `2.1` for {2, 1}; empty string for straight-line code.
std::string dotted(const IterationVector& iv);
// Inverse of dotted(); nullopt for malformed text or non-positive counts.
std::optional<IterationVector> parse_dotted(std::string_view text);

struct TraceStep {
  std::size_t step_index = 0;
  int line = 0;
  IterationVector iteration;
  Environment env_after;
  std::optional<int> next_line;  // nullopt: execution ends after this step

  bool operator==(const TraceStep&) const = default;
};

enum class Termination { Normal, StepLimit };

struct Trace {
  std::vector<TraceStep> steps;
  std::vector<std::string> columns;
  Termination terminated = Termination::Normal;

  // The step executed at (line, iteration), or nullptr.
  const TraceStep* find(int line, const IterationVector& iteration) const;
  bool has_column(std::string_view name) const;

  bool operator==(const Trace&) const = default;
};

struct ExecutionLimits {
  int max_steps = 10000;

  bool operator==(const ExecutionLimits&) const = default;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("UnknownVariable", "'" + name + "' is not a worksheet column") {}
};

// Worksheet columns: initial-parameter names first, then the program's
// declared variables in first-assignment order.
std::vector<std::string> trace_columns(const lang::Program& program, const Environment& initial_env);

// Value of `variable` after the step at (line, iteration). nullopt when that
// step never executes or the variable is still unassigned there.
std::optional<Value> trace_cell(const Trace& trace, int line, const IterationVector& iteration,
                                std::string_view variable);

struct LineIterations {
  int line = 0;
  std::vector<IterationVector> iterations;  // in execution order

  bool operator==(const LineIterations&) const = default;
};

// Which iterations each executed line has, for the per-line iteration picker.
// Lines that never execute are absent.
struct WorksheetLayout {
  std::vector<std::string> columns;
  std::vector<LineIterations> lines;

  const LineIterations* find(int line) const;
  bool operator==(const WorksheetLayout&) const = default;
};

WorksheetLayout worksheet_layout(const lang::Program& program, const Trace& trace);

}  // namespace line_explorer::tracer
