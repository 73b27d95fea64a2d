#include "line_explorer/tracer/export.hpp"

#include <algorithm>
#include <sstream>

namespace line_explorer::tracer {

namespace {

std::vector<std::vector<std::string>> rows_of(const Trace& trace) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"step", "line", "iter"};
  header.insert(header.end(), trace.columns.begin(), trace.columns.end());
  rows.push_back(std::move(header));
  for (const auto& s : trace.steps) {
    std::vector<std::string> row{std::to_string(s.step_index), std::to_string(s.line),
                                 dotted(s.iteration)};
    for (const auto& col : trace.columns) {
      auto it = s.env_after.find(col);
      row.push_back(it == s.env_after.end() ? "" : it->second.render());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string render_trace_table(const Trace& trace) {
  const auto rows = rows_of(trace);
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      line.append(widths[c] - row[c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return out.str();
}

std::string render_trace_tsv(const Trace& trace) {
  std::ostringstream out;
  for (const auto& row : rows_of(trace)) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << '\t';
      out << row[c];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace line_explorer::tracer
