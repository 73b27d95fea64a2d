#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "line_explorer/error.hpp"

namespace line_explorer::sus {

enum class ModeTested { Narrated, Evaluation };

enum class AcademicProgram { IT, CS, IS, MathPhysSci, LiberalArts, BusinessEcon, FineArts };

enum class CompletedCourses { Zero, One, Two, Three, FourPlus };

struct Respondent {
  AcademicProgram academic_program = AcademicProgram::IT;
  bool first_course = false;
  CompletedCourses completed_courses = CompletedCourses::Zero;
  int experience = 3;  // Likert 1..5 from here on
  int comfort = 3;
  int attitude = 3;
  int course_attitude = 3;
  bool used_internet = false;
  std::vector<std::string> resources;
  std::string respondent_id;  // optional opaque tag; empty when anonymous

  bool operator==(const Respondent&) const = default;
};

struct SusResponse {
  std::vector<int> items;  // ten answers, 1 = strongly disagree .. 5 = strongly agree
  ModeTested mode = ModeTested::Narrated;
  Respondent respondent;

  bool operator==(const SusResponse&) const = default;
};

class InvalidResponse : public Error {
 public:
  explicit InvalidResponse(const std::string& message) : Error("InvalidResponse", message) {}
};

// Throws InvalidResponse unless there are ten items in 1..5 and every
// respondent Likert field is in 1..5.
void validate_response(const SusResponse& response);

/// Standard SUS scoring: odd items contribute item - 1, even items 5 - item,
/// and the sum is scaled by 2.5 onto 0..100.
double sus_score(const std::vector<int>& items);
double sus_score(const SusResponse& response);

enum class AdjectiveRating { WorstImaginable, Poor, OK, Good, Excellent, BestImaginable };

// Bands [0,25) [25,38) [38,52) [52,73) [73,85) [85,100]. Accepts any real in
// [0,100], so cohort means classify too; throws InvalidResponse outside it.
AdjectiveRating classify(double score);

std::string_view to_string(AdjectiveRating rating);
std::string_view to_string(ModeTested mode);
std::string_view to_string(AcademicProgram program);
std::string_view to_string(CompletedCourses courses);

std::optional<ModeTested> parse_mode(std::string_view text);
std::optional<AcademicProgram> parse_program(std::string_view text);
std::optional<CompletedCourses> parse_completed_courses(std::string_view text);

// Default questionnaire wording (Brooke's ten statements).
const std::vector<std::string>& default_questionnaire();

}  // namespace line_explorer::sus
