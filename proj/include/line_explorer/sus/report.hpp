#pragma once

#include <string>
#include <vector>

#include "line_explorer/sus/cohort.hpp"

namespace line_explorer::sus {

// One decimal place, halves rounded away from zero.
std::string format_mean(double mean);

/// Aligned plain-text table. One field: a row per group value with
/// Narrated/Evaluation columns. Two fields: a row per (first value, mode)
/// with a column per value of the second field. Empty cells print "---".
std::string render_report_text(const std::vector<CohortMean>& means,
                               const std::vector<GroupField>& group_by);

// CSV: the group-by field names, mode, mean (unrounded), mean_1dp, n.
std::string render_report_machine(const std::vector<CohortMean>& means,
                                  const std::vector<GroupField>& group_by);

}  // namespace line_explorer::sus
