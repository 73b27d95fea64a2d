#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "line_explorer/error.hpp"
#include "line_explorer/lang/ast.hpp"
#include "line_explorer/lang/source.hpp"
#include "line_explorer/lang/validate.hpp"
#include "line_explorer/tracer/trace.hpp"

namespace line_explorer::io {

using lang::Diagnostic;
using lang::Environment;
using lang::ExerciseMode;

struct MediaRefs {
  std::optional<std::string> video;
  // Executable line -> relative audio path; nullopt is the explicit `none` marker.
  std::map<int, std::optional<std::string>> audio;

  bool operator==(const MediaRefs&) const = default;
};

// The authored unit: what an instructor writes in one exercise document.
struct Exercise {
  std::string id;
  std::string title;
  std::string assumptions_text;
  Environment initial_env;
  lang::SourceProgram source{""};
  std::set<ExerciseMode> modes;
  MediaRefs media;
  tracer::ExecutionLimits limits;

  bool has_mode(ExerciseMode m) const { return modes.count(m) > 0; }
  bool operator==(const Exercise&) const = default;
};

enum class ExerciseErrorKind { Schema, Validation, Trace };

class ExerciseError : public Error {
 public:
  ExerciseError(ExerciseErrorKind kind, const std::string& message,
                std::vector<Diagnostic> diagnostics = {});

  ExerciseErrorKind kind() const noexcept { return kind_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  ExerciseErrorKind kind_;
  std::vector<Diagnostic> diagnostics_;
};

// An exercise that parsed, validated for every declared mode, and executed
// within its limits. Holds the ground-truth trace; immutable.
class PreparedExercise {
 public:
  // Throws ExerciseError. When `media_root` is given, referenced media files
  // that do not exist under it become `media-missing` warnings.
  static PreparedExercise prepare(Exercise exercise,
                                  const std::optional<std::filesystem::path>& media_root = {});

  const Exercise& exercise() const noexcept { return exercise_; }
  const std::string& id() const noexcept { return exercise_.id; }
  const lang::Program& program() const noexcept { return program_; }
  const tracer::Trace& trace() const noexcept { return trace_; }
  const tracer::WorksheetLayout& layout() const noexcept { return layout_; }
  const std::vector<std::string>& columns() const noexcept { return trace_.columns; }
  const std::vector<Diagnostic>& warnings() const noexcept { return warnings_; }

 private:
  PreparedExercise() = default;

  Exercise exercise_;
  lang::Program program_;
  tracer::Trace trace_;
  tracer::WorksheetLayout layout_;
  std::vector<Diagnostic> warnings_;
};

using ExercisePtr = std::shared_ptr<const PreparedExercise>;

bool is_valid_slug(std::string_view id);

}  // namespace line_explorer::io
