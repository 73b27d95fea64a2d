#pragma once

#include <string>
#include <string_view>

#include "line_explorer/error.hpp"
#include "line_explorer/lang/ast.hpp"
#include "line_explorer/lang/source.hpp"

namespace line_explorer::lang {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  // Message without the location prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

// Parses a whole program. One statement per line; brace lines carry no
// statement. The first syntax error is thrown as ParseError.
Program parse(const SourceProgram& source);
Program parse(std::string_view text);

}  // namespace line_explorer::lang
