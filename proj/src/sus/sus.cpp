#include "line_explorer/sus/sus.hpp"

#include <array>
#include <cmath>

namespace line_explorer::sus {

namespace {

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view text) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == text) return static_cast<E>(i);
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 2> kModes{"narrated", "evaluation"};
constexpr std::array<std::string_view, 7> kPrograms{"IT",          "CS",           "IS",      "MathPhysSci",
                                                    "LiberalArts", "BusinessEcon", "FineArts"};
constexpr std::array<std::string_view, 5> kCourses{"0", "1", "2", "3", "4+"};
constexpr std::array<std::string_view, 6> kRatings{"Worst imaginable", "Poor",      "OK",
                                                   "Good",             "Excellent", "Best imaginable"};

void check_likert(int v, const char* what) {
  if (v < 1 || v > 5) throw InvalidResponse(std::string(what) + " must be 1..5, got " + std::to_string(v));
}

}  // namespace

void validate_response(const SusResponse& r) {
  if (r.items.size() != 10) {
    throw InvalidResponse("expected 10 items, got " + std::to_string(r.items.size()));
  }
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    if (r.items[i] < 1 || r.items[i] > 5) {
      throw InvalidResponse("item " + std::to_string(i + 1) + " must be 1..5, got " +
                            std::to_string(r.items[i]));
    }
  }
  check_likert(r.respondent.experience, "experience");
  check_likert(r.respondent.comfort, "comfort");
  check_likert(r.respondent.attitude, "attitude");
  check_likert(r.respondent.course_attitude, "course_attitude");
}

double sus_score(const std::vector<int>& items) {
  if (items.size() != 10) throw InvalidResponse("expected 10 items, got " + std::to_string(items.size()));
  int sum = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    int v = items[i];
    if (v < 1 || v > 5) {
      throw InvalidResponse("item " + std::to_string(i + 1) + " must be 1..5, got " + std::to_string(v));
    }
    sum += i % 2 == 0 ? v - 1 : 5 - v;  // i is 0-based: even i is an odd-numbered item
  }
  return 2.5 * sum;
}

double sus_score(const SusResponse& response) {
  validate_response(response);
  return sus_score(response.items);
}

AdjectiveRating classify(double score) {
  if (!(score >= 0.0 && score <= 100.0)) throw InvalidResponse("SUS score must lie in 0..100");
  if (score < 25.0) return AdjectiveRating::WorstImaginable;
  if (score < 38.0) return AdjectiveRating::Poor;
  if (score < 52.0) return AdjectiveRating::OK;
  if (score < 73.0) return AdjectiveRating::Good;
  if (score < 85.0) return AdjectiveRating::Excellent;
  return AdjectiveRating::BestImaginable;
}

std::string_view to_string(AdjectiveRating rating) { return kRatings[static_cast<std::size_t>(rating)]; }
std::string_view to_string(ModeTested mode) { return kModes[static_cast<std::size_t>(mode)]; }
std::string_view to_string(AcademicProgram p) { return kPrograms[static_cast<std::size_t>(p)]; }
std::string_view to_string(CompletedCourses c) { return kCourses[static_cast<std::size_t>(c)]; }

std::optional<ModeTested> parse_mode(std::string_view text) { return lookup<ModeTested>(kModes, text); }
std::optional<AcademicProgram> parse_program(std::string_view text) {
  return lookup<AcademicProgram>(kPrograms, text);
}
std::optional<CompletedCourses> parse_completed_courses(std::string_view text) {
  return lookup<CompletedCourses>(kCourses, text);
}

const std::vector<std::string>& default_questionnaire() {
  static const std::vector<std::string> items = {
      "I think that I would like to use this system frequently.",
      "I found the system unnecessarily complex.",
      "I thought the system was easy to use.",
      "I think that I would need the support of a technical person to be able to use this system.",
      "I found the various functions in this system were well integrated.",
      "I thought there was too much inconsistency in this system.",
      "I would imagine that most people would learn to use this system very quickly.",
      "I found the system very cumbersome to use.",
      "I felt very confident using the system.",
      "I needed to learn a lot of things before I could get going with this system.",
  };
  return items;
}

}  // namespace line_explorer::sus
