#include "line_explorer/sus/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

namespace line_explorer::sus {

namespace {

std::string_view field_label(GroupField f) {
  switch (f) {
    case GroupField::Program: return "Academic program";
    case GroupField::FirstCourse: return "First course";
    case GroupField::CompletedCourses: return "Completed courses";
    case GroupField::Experience: return "Experience";
    case GroupField::Comfort: return "Comfort";
    case GroupField::Attitude: return "Attitude";
    case GroupField::CourseAttitude: return "Course attitude";
    case GroupField::UsedInternet: return "Used internet";
  }
  return "";
}

std::string value_label(GroupField f, const std::string& value) {
  if (f == GroupField::FirstCourse) return value == "yes" ? "First course" : "Not first course";
  return value;
}

const CohortMean* find(const std::vector<CohortMean>& means, const std::vector<std::string>& key,
                       ModeTested mode) {
  for (const auto& m : means) {
    if (m.group_key == key && m.mode == mode) return &m;
  }
  return nullptr;
}

std::string cell(const CohortMean* m) { return m ? format_mean(m->mean) : "---"; }

// Values of field `index` that occur in `means`, in domain order.
std::vector<std::string> present_values(const std::vector<CohortMean>& means, GroupField f, std::size_t index) {
  std::set<std::string> seen;
  for (const auto& m : means) seen.insert(m.group_key.at(index));
  std::vector<std::string> out;
  for (const auto& v : field_domain(f)) {
    if (seen.count(v)) out.push_back(v);
  }
  return out;
}

std::string render_grid(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) line += "  ";
      std::string pad(width[c] - r[c].size(), ' ');
      line += c == 0 ? r[c] + pad : pad + r[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::to_string(v);
}

}  // namespace

std::string format_mean(double mean) {
  double rounded = std::round(mean * 10.0) / 10.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", rounded);
  return buf;
}

std::string render_report_text(const std::vector<CohortMean>& means, const std::vector<GroupField>& group_by) {
  std::vector<std::vector<std::string>> rows;
  if (group_by.size() == 1) {
    rows.push_back({std::string(field_label(group_by[0])), "Narrated demo", "Evaluation"});
    for (const auto& v : present_values(means, group_by[0], 0)) {
      rows.push_back({value_label(group_by[0], v), cell(find(means, {v}, ModeTested::Narrated)),
                      cell(find(means, {v}, ModeTested::Evaluation))});
    }
  } else {
    const auto columns = field_domain(group_by[1]);
    std::vector<std::string> head{std::string(field_label(group_by[0]))};
    for (const auto& c : columns) head.push_back(value_label(group_by[1], c));
    head.push_back("Mode");
    rows.push_back(std::move(head));
    for (const auto& v : present_values(means, group_by[0], 0)) {
      for (ModeTested mode : {ModeTested::Narrated, ModeTested::Evaluation}) {
        std::vector<std::string> row{mode == ModeTested::Narrated ? value_label(group_by[0], v) : ""};
        for (const auto& c : columns) row.push_back(cell(find(means, {v, c}, mode)));
        row.push_back(mode == ModeTested::Narrated ? "N" : "E");
        rows.push_back(std::move(row));
      }
    }
  }
  return render_grid(rows);
}

std::string render_report_machine(const std::vector<CohortMean>& means,
                                  const std::vector<GroupField>& group_by) {
  std::string out;
  for (GroupField f : group_by) out += std::string(to_string(f)) + ",";
  out += "mode,mean,mean_1dp,n\n";
  for (const auto& m : means) {
    for (const auto& k : m.group_key) out += k + ",";
    out += std::string(to_string(m.mode)) + "," + shortest(m.mean) + "," + format_mean(m.mean) + "," +
           std::to_string(m.n) + "\n";
  }
  return out;
}

}  // namespace line_explorer::sus
