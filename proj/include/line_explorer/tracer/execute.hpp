#pragma once

#include <string>

#include "line_explorer/error.hpp"
#include "line_explorer/lang/ast.hpp"
#include "line_explorer/tracer/trace.hpp"

namespace line_explorer::tracer {

enum class RuntimeErrorKind { DivisionByZero, Overflow, TypeMismatch, UnassignedVariable };

std::string_view to_string(RuntimeErrorKind kind);

// A failure while executing `line`. The partial trace holds every step that
// completed before it.
class RuntimeError : public Error {
 public:
  RuntimeError(RuntimeErrorKind kind, int line, const std::string& message, Trace partial);

  RuntimeErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  const Trace& partial_trace() const noexcept { return partial_; }

 private:
  RuntimeErrorKind kind_;
  int line_;
  Trace partial_;
};

/// Runs `program` from `initial_env` and records one step per executed
/// statement line, condition lines included. Reaching `limits.max_steps`
/// ends the trace with Termination::StepLimit rather than throwing.
Trace execute(const lang::Program& program, const Environment& initial_env,
              ExecutionLimits limits = {});

}  // namespace line_explorer::tracer
