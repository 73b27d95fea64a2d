#pragma once

#include <string>

#include "line_explorer/tracer/trace.hpp"

namespace line_explorer::tracer {

// Aligned plain-text table: step, line, iter, then one column per variable.
// Unassigned cells are blank.
std::string render_trace_table(const Trace& trace);

// Same columns, tab-separated, one header row.
std::string render_trace_tsv(const Trace& trace);

}  // namespace line_explorer::tracer
