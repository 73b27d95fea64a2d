#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace line_explorer::lang {

/// Raw program text with 1-based line access. CRLF and lone CR are
/// normalized to LF on construction.
class SourceProgram {
 public:
  explicit SourceProgram(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  const std::vector<std::string>& lines() const noexcept { return lines_; }
  int line_count() const noexcept { return static_cast<int>(lines_.size()); }

  // 1-based; throws std::out_of_range outside [1, line_count()].
  const std::string& line(int number) const;

  // Equality is over the line sequence, so a trailing newline does not matter.
  bool operator==(const SourceProgram& other) const { return lines_ == other.lines_; }

 private:
  std::string text_;
  std::vector<std::string> lines_;
};

}  // namespace line_explorer::lang
