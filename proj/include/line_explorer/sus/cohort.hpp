#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "line_explorer/sus/sus.hpp"

namespace line_explorer::sus {

enum class GroupField {
  Program,
  FirstCourse,
  CompletedCourses,
  Experience,
  Comfort,
  Attitude,
  CourseAttitude,
  UsedInternet,
};

// Names as used on the command line and in CSV headers: program, first_course,
// completed_courses, experience, comfort, attitude, course_attitude, used_internet.
std::string_view to_string(GroupField field);
std::optional<GroupField> parse_group_field(std::string_view text);

// Every value the field can take, in report order.
std::vector<std::string> field_domain(GroupField field);
std::string field_value(const Respondent& respondent, GroupField field);

struct CohortMean {
  std::vector<std::string> group_key;  // one value per group-by field
  ModeTested mode = ModeTested::Narrated;
  double mean = 0.0;  // unrounded
  int n = 0;

  bool operator==(const CohortMean&) const = default;
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("EmptyInput", "no survey responses to aggregate") {}
};

/// Mean SUS score per (group key, mode). Rows are ordered by the fields'
/// domain order, then Narrated before Evaluation; empty groups are omitted.
/// `group_by` holds one or two distinct fields. Throws EmptyInput,
/// InvalidResponse, or std::invalid_argument for a bad `group_by`.
std::vector<CohortMean> cohort_means(const std::vector<SusResponse>& responses,
                                     const std::vector<GroupField>& group_by);

}  // namespace line_explorer::sus
