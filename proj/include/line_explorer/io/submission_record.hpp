#pragma once

#include <optional>
#include <string>
#include <vector>

#include "line_explorer/grading/submission.hpp"

namespace line_explorer::io {

inline constexpr int kSubmissionFormatVersion = 1;

// One graded evaluation attempt as persisted. Immutable once written; the
// result can be recomputed from `answers` and the exercise.
struct StoredSubmission {
  std::string receipt_id;  // assigned by the store
  std::string exercise_id;
  std::string session_id;
  std::vector<grading::AnswerStep> answers;
  grading::SubmissionResult result;
  std::string started_at;  // ISO 8601, UTC
  std::string submitted_at;
  std::optional<std::string> respondent;

  bool operator==(const StoredSubmission&) const = default;
};

class StorageError : public Error {
 public:
  explicit StorageError(const std::string& message) : Error("StorageError", message) {}
};

// Current UTC time as 2026-10-14T09:30:00.123Z.
std::string utc_timestamp();

}  // namespace line_explorer::io
