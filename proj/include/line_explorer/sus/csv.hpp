#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "line_explorer/sus/sus.hpp"

namespace line_explorer::sus {

inline constexpr int kSusCsvFormatVersion = 1;

// Column order of the response file, after the `format_version,1` line.
const std::vector<std::string>& sus_csv_header();

struct RejectedRow {
  int line = 0;  // 1-based line in the file
  std::string reason;
};

struct SusCsv {
  std::vector<SusResponse> responses;
  std::vector<RejectedRow> rejected;
};

class SusFileError : public Error {
 public:
  explicit SusFileError(const std::string& message) : Error("SusFileError", message) {}
};

/// Parses a response file. A missing or wrong version line or header throws
/// SusFileError; individual rows that are partial or out of range are skipped
/// and reported in `rejected`.
SusCsv parse_sus_csv(std::string_view text);

std::string write_sus_csv(const std::vector<SusResponse>& responses);

// One data row (no trailing newline).
std::string sus_csv_row(const SusResponse& response);

}  // namespace line_explorer::sus
