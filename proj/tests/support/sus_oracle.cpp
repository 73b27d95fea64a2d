#include "sus_oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace line_explorer::support {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

std::map<std::string, OracleCell> oracle_means(const std::string& csv_text,
                                               const std::vector<std::string>& group_columns) {
  std::istringstream in(csv_text);
  std::string line;
  std::vector<std::string> header;
  std::map<std::string, double> sums;
  std::map<std::string, int> counts;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line.rfind("format_version", 0) == 0) continue;
    auto cells = split(line);
    if (header.empty()) {
      header = cells;
      continue;
    }
    auto col = [&](const std::string& name) -> const std::string& {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return cells.at(i);
      }
      throw std::runtime_error("no column " + name);
    };
    // SUS: (sum of odd items - 5) + (25 - sum of even items), times 2.5.
    int odd = 0, even = 0;
    for (int k = 1; k <= 10; ++k) {
      int v = std::stoi(col("item" + std::to_string(k)));
      (k % 2 ? odd : even) += v;
    }
    double score = ((odd - 5) + (25 - even)) * 2.5;
    std::string key;
    for (const auto& g : group_columns) key += col(g) + "|";
    key += col("mode");
    sums[key] += score;
    counts[key] += 1;
  }
  std::map<std::string, OracleCell> out;
  for (const auto& [key, sum] : sums) {
    double mean = sum / counts[key];
    out[key] = {mean, std::floor(mean * 10.0 + 0.5) / 10.0, counts[key]};
  }
  return out;
}

}  // namespace line_explorer::support
