#pragma once

#include <nlohmann/json.hpp>

#include "line_explorer/grading/submission.hpp"
#include "line_explorer/io/submission_record.hpp"
#include "line_explorer/tracer/trace.hpp"

namespace line_explorer::io {

using Json = nlohmann::ordered_json;

Json to_json(const lang::Value& value);
Json to_json(const std::optional<lang::Value>& value);  // null when unassigned
Json to_json(const tracer::TraceStep& step, const std::vector<std::string>& columns);
Json to_json(const tracer::WorksheetLayout& layout);

Json to_json(const grading::AnswerStep& step);
grading::AnswerStep answer_step_from_json(const Json& j);

Json to_json(const grading::SubmissionResult& result);
grading::SubmissionResult submission_result_from_json(const Json& j);

// Includes "format_version". from_json throws StorageError on a bad record.
Json to_json(const StoredSubmission& sub);
StoredSubmission stored_submission_from_json(const Json& j);

// Student-side view of a session: cursor, indicator, rows, gate. Carries
// nothing derived from the truth trace.
Json session_view(const grading::EvalSession& session, long long revision);

}  // namespace line_explorer::io
