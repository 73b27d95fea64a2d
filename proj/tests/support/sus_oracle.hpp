#pragma once

#include <map>
#include <string>
#include <vector>

namespace line_explorer::support {

struct OracleCell {
  double mean = 0.0;
  double mean_1dp = 0.0;  // rounded half up
  int n = 0;
};

// Spreadsheet-style averaging straight from the response file text: look up
// columns by header name, score each row by hand, sum and divide per group.
// Keys are the group values joined with '|', then '|' and the mode.
// Expects unquoted fields.
std::map<std::string, OracleCell> oracle_means(const std::string& csv_text,
                                               const std::vector<std::string>& group_columns);

}  // namespace line_explorer::support
