#pragma once

#include <string>

#include "line_explorer/error.hpp"

namespace line_explorer::grading {

// Codes: ModeUnavailable, UnknownCell, SessionComplete, MissingColumns,
// NothingToUndo, InvalidTarget, InvalidExit, NotComplete, AlreadySubmitted.
class GradingError : public Error {
 public:
  using Error::Error;
};

}  // namespace line_explorer::grading
