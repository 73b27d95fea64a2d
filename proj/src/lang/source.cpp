#include "line_explorer/lang/source.hpp"

#include <stdexcept>

namespace line_explorer::lang {

SourceProgram::SourceProgram(std::string_view text) {
  text_.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      text_.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      text_.push_back(text[i]);
    }
  }

  std::string current;
  for (char c : text_) {
    if (c == '\n') {
      lines_.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  // The final terminator does not open a new line.
  if (!current.empty() || text_.empty() || text_.back() != '\n') lines_.push_back(std::move(current));
  if (text_.empty()) lines_.clear();
}

const std::string& SourceProgram::line(int number) const {
  if (number < 1 || number > line_count()) {
    throw std::out_of_range("line " + std::to_string(number) + " out of range");
  }
  return lines_[static_cast<std::size_t>(number - 1)];
}

}  // namespace line_explorer::lang
