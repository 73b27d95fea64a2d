#pragma once

#include <string>
#include <vector>

#include "line_explorer/lang/ast.hpp"
#include "line_explorer/lang/value.hpp"

namespace line_explorer::lang {

enum class ExerciseMode { Demonstration, Evaluation };

std::string_view to_string(ExerciseMode mode);

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  int line = 1;
  std::string message;
  std::string code;

  bool operator==(const Diagnostic&) const = default;
};

std::string format(const Diagnostic& d);

/// Authoring checks for publishing `program` in `mode`:
///  - `use-before-assign`: a read of a variable that is not definitely
///    assigned on every path (initial_env counts as assigned);
///  - `constant-division-by-zero`: `/` or `%` by a constant-zero operand;
///  - `conditional-in-evaluation`, `nested-loop-in-evaluation`: evaluation
///    worksheets only support straight-line code and single-level loops;
///  - `empty-program`: no executable statement.
/// An empty result means the program is publishable.
std::vector<Diagnostic> validate(const Program& program, const Environment& initial_env,
                                 ExerciseMode mode);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace line_explorer::lang
