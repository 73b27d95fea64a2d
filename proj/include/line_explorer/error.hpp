#pragma once

#include <stdexcept>
#include <string>

namespace line_explorer {

// Base for every domain error. `code()` is the stable machine name
// (e.g. "ParseError", "MissingColumns") that the HTTP layer maps to a status.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace line_explorer
