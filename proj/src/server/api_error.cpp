#include "line_explorer/server/api_error.hpp"

#include <nlohmann/json.hpp>

namespace line_explorer::server {

const std::vector<std::pair<std::string, int>>& error_table() {
  static const std::vector<std::pair<std::string, int>> table = {
      {"BadRequest", 400},
      {"NotFound", 404},
      {"ModeUnavailable", 404},
      {"UnknownCell", 404},
      {"EmptyInput", 404},
      {"Conflict", 409},
      {"SessionComplete", 409},
      {"NothingToUndo", 409},
      {"NotComplete", 409},
      {"AlreadySubmitted", 409},
      {"PayloadTooLarge", 413},
      {"MissingColumns", 422},
      {"UnknownVariable", 422},
      {"InvalidTarget", 422},
      {"InvalidExit", 422},
      {"InvalidResponse", 422},
      {"SchemaError", 422},
      {"ValidationError", 422},
      {"TraceError", 422},
      {"ParseError", 422},
      {"RuntimeError", 422},
      {"StorageError", 500},
      {"SusFileError", 500},
      {"Internal", 500},
  };
  return table;
}

int status_for(std::string_view code) {
  for (const auto& [c, status] : error_table()) {
    if (c == code) return status;
  }
  return 500;
}

ApiError to_api_error(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return {status_for(err->code()), err->code(), err->what()};
  }
  if (const auto* j = dynamic_cast<const nlohmann::json::exception*>(&e)) {
    return {400, "BadRequest", std::string("malformed request body: ") + j->what()};
  }
  return {500, "Internal", "internal error"};
}

std::string error_body(const ApiError& e) {
  return nlohmann::ordered_json{{"error", {{"code", e.code}, {"message", e.message}}}}.dump();
}

}  // namespace line_explorer::server
