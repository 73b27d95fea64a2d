#include "line_explorer/io/exercise.hpp"

#include <algorithm>
#include <cctype>

#include "line_explorer/lang/parser.hpp"
#include "line_explorer/tracer/execute.hpp"

namespace line_explorer::io {

namespace {

std::string_view kind_code(ExerciseErrorKind kind) {
  switch (kind) {
    case ExerciseErrorKind::Schema: return "SchemaError";
    case ExerciseErrorKind::Validation: return "ValidationError";
    case ExerciseErrorKind::Trace: return "TraceError";
  }
  return "SchemaError";
}

std::string with_diagnostics(const std::string& message, const std::vector<Diagnostic>& ds) {
  std::string out = message;
  for (const auto& d : ds) out += "\n  " + lang::format(d);
  return out;
}

void check_media(const Exercise& ex, const std::vector<int>& executable,
                 std::vector<Diagnostic>& errors) {
  for (const auto& [line, ref] : ex.media.audio) {
    if (!std::binary_search(executable.begin(), executable.end(), line)) {
      errors.push_back({lang::Severity::Error, std::clamp(line, 1, std::max(1, ex.source.line_count())),
                        "audio reference on line " + std::to_string(line) +
                            ", which is not an executable line",
                        "audio-on-non-executable-line"});
    }
    if (ref && ref->empty()) {
      errors.push_back({lang::Severity::Error, line, "empty audio path", "empty-media-path"});
    }
  }
  if (!ex.has_mode(ExerciseMode::Demonstration)) return;
  for (int line : executable) {
    if (!ex.media.audio.count(line)) {
      errors.push_back({lang::Severity::Error, line,
                        "line " + std::to_string(line) + " has no audio reference (use `none`)",
                        "missing-audio"});
    }
  }
}

void warn_missing(const std::filesystem::path& root, const std::string& rel, int line,
                  std::vector<Diagnostic>& warnings) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(root / rel, ec)) {
    warnings.push_back({lang::Severity::Warning, line, "media file not found: " + rel, "media-missing"});
  }
}

}  // namespace

ExerciseError::ExerciseError(ExerciseErrorKind kind, const std::string& message,
                             std::vector<Diagnostic> diagnostics)
    : Error(std::string(kind_code(kind)), with_diagnostics(message, diagnostics)),
      kind_(kind),
      diagnostics_(std::move(diagnostics)) {}

bool is_valid_slug(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  if (id.front() == '-' || id.front() == '_') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '-' || c == '_';
  });
}

PreparedExercise PreparedExercise::prepare(Exercise exercise,
                                           const std::optional<std::filesystem::path>& media_root) {
  if (!is_valid_slug(exercise.id)) {
    throw ExerciseError(ExerciseErrorKind::Schema,
                        "exercise id '" + exercise.id + "' must be a lowercase slug ([a-z0-9_-])");
  }
  if (exercise.modes.empty()) {
    throw ExerciseError(ExerciseErrorKind::Schema, "exercise '" + exercise.id + "' declares no modes");
  }
  if (exercise.limits.max_steps < 1) {
    throw ExerciseError(ExerciseErrorKind::Schema, "max_steps must be positive");
  }

  PreparedExercise out;
  try {
    out.program_ = lang::parse(exercise.source);
  } catch (const lang::ParseError& e) {
    throw ExerciseError(ExerciseErrorKind::Validation, "exercise '" + exercise.id + "' does not parse",
                        {{lang::Severity::Error, e.line(), e.detail(), "parse-error"}});
  }

  std::vector<Diagnostic> errors;
  for (ExerciseMode mode : exercise.modes) {
    for (auto& d : lang::validate(out.program_, exercise.initial_env, mode)) {
      if (std::find(errors.begin(), errors.end(), d) == errors.end()) errors.push_back(std::move(d));
    }
  }
  check_media(exercise, lang::executable_lines(out.program_), errors);
  std::stable_sort(errors.begin(), errors.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  if (lang::has_errors(errors)) {
    throw ExerciseError(ExerciseErrorKind::Validation,
                        "exercise '" + exercise.id + "' failed validation", std::move(errors));
  }
  for (auto& d : errors) out.warnings_.push_back(std::move(d));

  try {
    out.trace_ = tracer::execute(out.program_, exercise.initial_env, exercise.limits);
  } catch (const tracer::RuntimeError& e) {
    throw ExerciseError(ExerciseErrorKind::Trace, "exercise '" + exercise.id + "' fails at run time",
                        {{lang::Severity::Error, e.line(), e.what(), "runtime-error"}});
  }
  if (out.trace_.terminated == tracer::Termination::StepLimit) {
    int line = out.trace_.steps.empty() ? 1 : out.trace_.steps.back().line;
    throw ExerciseError(ExerciseErrorKind::Trace, "exercise '" + exercise.id + "' does not terminate",
                        {{lang::Severity::Error, line,
                          "step limit of " + std::to_string(exercise.limits.max_steps) + " reached",
                          "step-limit"}});
  }
  out.layout_ = tracer::worksheet_layout(out.program_, out.trace_);

  if (media_root) {
    if (exercise.media.video) warn_missing(*media_root, *exercise.media.video, 1, out.warnings_);
    for (const auto& [line, ref] : exercise.media.audio) {
      if (ref) warn_missing(*media_root, *ref, line, out.warnings_);
    }
  }
  out.exercise_ = std::move(exercise);
  return out;
}

}  // namespace line_explorer::io
