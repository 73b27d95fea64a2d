#pragma once

#include <exception>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "line_explorer/error.hpp"

namespace line_explorer::server {

struct ApiError {
  int status = 500;
  std::string code;
  std::string message;
};

// Errors raised by the HTTP layer itself.
class RequestError : public Error {
 public:
  using Error::Error;
};

// Every machine code the API can return, with its HTTP status.
const std::vector<std::pair<std::string, int>>& error_table();

// Status for `code`; 500 for codes not in the table.
int status_for(std::string_view code);

ApiError to_api_error(const std::exception& e);

// {"error": {"code": ..., "message": ...}}
std::string error_body(const ApiError& e);

}  // namespace line_explorer::server
