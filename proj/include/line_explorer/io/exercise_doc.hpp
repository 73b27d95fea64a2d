#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "line_explorer/io/exercise.hpp"

namespace line_explorer::io {

inline constexpr int kExerciseFormatVersion = 1;

// Reads an exercise document (YAML). Throws ExerciseError(kind Schema) on
// any shape problem; performs no validation of the program.
Exercise parse_exercise_document(std::string_view text);

// Writes `exercise` as a document that parse_exercise_document reads back
// to an equal Exercise.
std::string write_exercise_document(const Exercise& exercise);

/// Loads, validates and executes the exercise at `path`. Media references are
/// resolved against `media_root`, or the document's directory when absent.
PreparedExercise load_exercise(const std::filesystem::path& path,
                               const std::optional<std::filesystem::path>& media_root = {});

// Same, from an in-memory document.
PreparedExercise load_exercise_text(std::string_view text,
                                    const std::optional<std::filesystem::path>& media_root = {});

}  // namespace line_explorer::io
