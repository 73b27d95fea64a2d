#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "line_explorer/io/submission_record.hpp"

namespace line_explorer::io {

/// Append-only log of graded submissions, one JSON record per line in
/// `<data_dir>/submissions.ndjson`. Appends are serialized and fsync'd;
/// readers see a prefix of the log and skip an unfinished last line.
class SubmissionStore {
 public:
  explicit SubmissionStore(std::filesystem::path data_dir);

  // Assigns a fresh receipt id, appends, returns the id. Throws StorageError.
  std::string store(StoredSubmission submission);

  // Insertion order. Throws StorageError on a corrupt record.
  std::vector<StoredSubmission> list(std::string_view exercise_id) const;
  std::vector<StoredSubmission> list_all() const;

  const std::filesystem::path& log_path() const noexcept { return log_; }

 private:
  std::filesystem::path log_;
  mutable std::mutex write_mutex_;
};

// Appends one line to `path`, creating it with `first_line` when new. fsync'd.
void append_line(const std::filesystem::path& path, const std::string& line,
                 const std::string& first_line = "");

}  // namespace line_explorer::io
