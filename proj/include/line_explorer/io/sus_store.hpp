#pragma once

#include <filesystem>
#include <mutex>
#include <string>

#include "line_explorer/sus/csv.hpp"

namespace line_explorer::io {

/// Questionnaire responses collected by the server, kept in the regular
/// response-file format at `<data_dir>/sus_responses.csv`. Each row is
/// preceded by a `# receipt=<id>` comment line.
class SusStore {
 public:
  explicit SusStore(std::filesystem::path data_dir);

  // Validates, appends, returns a receipt id. Throws sus::InvalidResponse, StorageError.
  std::string store(const sus::SusResponse& response);
  sus::SusCsv load() const;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
};

}  // namespace line_explorer::io
