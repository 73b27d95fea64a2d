#include "line_explorer/tracer/trace.hpp"

#include <algorithm>
#include <charconv>

namespace line_explorer::tracer {

std::string dotted(const IterationVector& iv) {
  std::string out;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(iv[i]);
  }
  return out;
}

std::optional<IterationVector> parse_dotted(std::string_view text) {
  IterationVector iv;
  if (text.empty()) return iv;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t dot = std::min(text.find('.', start), text.size());
    const std::string_view part = text.substr(start, dot - start);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || v < 1) {
      return std::nullopt;
    }
    iv.push_back(v);
    start = dot + 1;
  }
  return iv;
}

const TraceStep* Trace::find(int line, const IterationVector& iteration) const {
  for (const auto& s : steps) {
    if (s.line == line && s.iteration == iteration) return &s;
  }
  return nullptr;
}

bool Trace::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<std::string> trace_columns(const lang::Program& program, const Environment& initial_env) {
  std::vector<std::string> cols;
  for (const auto& [name, _] : initial_env) cols.push_back(name);
  for (const auto& name : program.declared_variables) {
    if (!initial_env.count(name)) cols.push_back(name);
  }
  return cols;
}

std::optional<Value> trace_cell(const Trace& trace, int line, const IterationVector& iteration,
                                std::string_view variable) {
  if (!trace.has_column(variable)) throw UnknownVariable(std::string(variable));
  const TraceStep* step = trace.find(line, iteration);
  if (!step) return std::nullopt;
  auto it = step->env_after.find(std::string(variable));
  if (it == step->env_after.end()) return std::nullopt;
  return it->second;
}

const LineIterations* WorksheetLayout::find(int line) const {
  for (const auto& l : lines) {
    if (l.line == line) return &l;
  }
  return nullptr;
}

WorksheetLayout worksheet_layout(const lang::Program& program, const Trace& trace) {
  WorksheetLayout layout;
  layout.columns = trace.columns;
  for (int line : lang::executable_lines(program)) {
    LineIterations entry{line, {}};
    for (const auto& s : trace.steps) {
      if (s.line == line) entry.iterations.push_back(s.iteration);
    }
    if (!entry.iterations.empty()) layout.lines.push_back(std::move(entry));
  }
  return layout;
}

}  // namespace line_explorer::tracer
