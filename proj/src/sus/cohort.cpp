#include "line_explorer/sus/cohort.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace line_explorer::sus {

namespace {

constexpr std::array<std::string_view, 8> kFields{"program",  "first_course", "completed_courses",
                                                  "experience", "comfort",     "attitude",
                                                  "course_attitude", "used_internet"};

std::size_t domain_index(GroupField field, const std::string& value) {
  auto domain = field_domain(field);
  return static_cast<std::size_t>(std::find(domain.begin(), domain.end(), value) - domain.begin());
}

}  // namespace

std::string_view to_string(GroupField field) { return kFields[static_cast<std::size_t>(field)]; }

std::optional<GroupField> parse_group_field(std::string_view text) {
  for (std::size_t i = 0; i < kFields.size(); ++i) {
    if (kFields[i] == text) return static_cast<GroupField>(i);
  }
  return std::nullopt;
}

std::vector<std::string> field_domain(GroupField field) {
  switch (field) {
    case GroupField::Program: {
      std::vector<std::string> out;
      for (int p = 0; p <= static_cast<int>(AcademicProgram::FineArts); ++p) {
        out.emplace_back(to_string(static_cast<AcademicProgram>(p)));
      }
      return out;
    }
    case GroupField::FirstCourse:
    case GroupField::UsedInternet:
      return {"yes", "no"};
    case GroupField::CompletedCourses:
      return {"0", "1", "2", "3", "4+"};
    default:
      return {"1", "2", "3", "4", "5"};
  }
}

std::string field_value(const Respondent& r, GroupField field) {
  switch (field) {
    case GroupField::Program: return std::string(to_string(r.academic_program));
    case GroupField::FirstCourse: return r.first_course ? "yes" : "no";
    case GroupField::UsedInternet: return r.used_internet ? "yes" : "no";
    case GroupField::CompletedCourses: return std::string(to_string(r.completed_courses));
    case GroupField::Experience: return std::to_string(r.experience);
    case GroupField::Comfort: return std::to_string(r.comfort);
    case GroupField::Attitude: return std::to_string(r.attitude);
    case GroupField::CourseAttitude: return std::to_string(r.course_attitude);
  }
  return "";
}

std::vector<CohortMean> cohort_means(const std::vector<SusResponse>& responses,
                                     const std::vector<GroupField>& group_by) {
  if (group_by.empty() || group_by.size() > 2 || (group_by.size() == 2 && group_by[0] == group_by[1])) {
    throw std::invalid_argument("group by one or two distinct fields");
  }
  if (responses.empty()) throw EmptyInput();

  struct Acc {
    std::vector<std::string> key;
    double sum = 0.0;
    int n = 0;
  };
  // Ordered by (domain positions..., mode).
  std::map<std::pair<std::vector<std::size_t>, int>, Acc> groups;
  for (const auto& r : responses) {
    double score = sus_score(r);
    std::vector<std::size_t> order;
    std::vector<std::string> key;
    for (GroupField f : group_by) {
      key.push_back(field_value(r.respondent, f));
      order.push_back(domain_index(f, key.back()));
    }
    Acc& acc = groups[{order, static_cast<int>(r.mode)}];
    acc.key = std::move(key);
    acc.sum += score;
    acc.n += 1;
  }

  std::vector<CohortMean> out;
  for (const auto& [k, acc] : groups) {
    out.push_back({acc.key, static_cast<ModeTested>(k.second), acc.sum / acc.n, acc.n});
  }
  return out;
}

}  // namespace line_explorer::sus
