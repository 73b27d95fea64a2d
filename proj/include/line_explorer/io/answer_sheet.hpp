#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "line_explorer/error.hpp"
#include "line_explorer/grading/eval_session.hpp"

namespace line_explorer::io {

class AnswerSheetError : public Error {
 public:
  explicit AnswerSheetError(const std::string& message) : Error("AnswerSheetError", message) {}
};

/// Reads a student's answers for offline grading. Two layouts are accepted:
///  - tab-separated, with a header row naming a `line` column and one column
///    per variable (`step` and `iter` are optional); the tracer's TSV export
///    is such a file;
///  - JSON, either a list of answer objects or `{"answers": [...]}` as stored
///    in the submission log.
/// Answers keep file order. Throws AnswerSheetError.
std::vector<grading::AnswerStep> parse_answer_sheet(std::string_view text);

}  // namespace line_explorer::io
