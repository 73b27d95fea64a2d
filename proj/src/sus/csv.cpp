#include "line_explorer/sus/csv.hpp"

#include <boost/tokenizer.hpp>

#include <charconv>

namespace line_explorer::sus {

namespace {

using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  Tokenizer tok(line, boost::escaped_list_separator<char>('\\', ',', '"'));
  std::vector<std::string> out;
  for (const auto& field : tok) out.push_back(trim(field));
  return out;
}

struct RowError {
  std::string reason;
};

int parse_int(const std::string& text, const std::string& column, int lo, int hi) {
  int v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty()) throw RowError{column + " is empty"};
  if (ec != std::errc() || end != text.data() + text.size() || v < lo || v > hi) {
    throw RowError{column + " must be " + std::to_string(lo) + ".." + std::to_string(hi) + ", got '" +
                   text + "'"};
  }
  return v;
}

bool parse_yes_no(const std::string& text, const std::string& column) {
  if (text == "yes") return true;
  if (text == "no") return false;
  throw RowError{column + " must be yes or no, got '" + text + "'"};
}

SusResponse parse_row(const std::vector<std::string>& f) {
  const auto& header = sus_csv_header();
  if (f.size() != header.size()) {
    throw RowError{"expected " + std::to_string(header.size()) + " fields, got " + std::to_string(f.size())};
  }
  SusResponse r;
  for (std::size_t i = 0; i < 10; ++i) r.items.push_back(parse_int(f[i], header[i], 1, 5));
  auto mode = parse_mode(f[10]);
  if (!mode) throw RowError{"mode must be narrated or evaluation, got '" + f[10] + "'"};
  r.mode = *mode;
  Respondent& p = r.respondent;
  p.respondent_id = f[11];
  auto program = parse_program(f[12]);
  if (!program) throw RowError{"unknown program '" + f[12] + "'"};
  p.academic_program = *program;
  p.first_course = parse_yes_no(f[13], header[13]);
  auto courses = parse_completed_courses(f[14]);
  if (!courses) throw RowError{"completed_courses must be 0, 1, 2, 3 or 4+, got '" + f[14] + "'"};
  p.completed_courses = *courses;
  p.experience = parse_int(f[15], header[15], 1, 5);
  p.comfort = parse_int(f[16], header[16], 1, 5);
  p.attitude = parse_int(f[17], header[17], 1, 5);
  p.course_attitude = parse_int(f[18], header[18], 1, 5);
  p.used_internet = parse_yes_no(f[19], header[19]);
  std::string_view rest = f[20];
  while (!rest.empty()) {
    auto semi = rest.find(';');
    std::string tag = trim(rest.substr(0, semi));
    if (!tag.empty()) p.resources.push_back(tag);
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
  }
  return r;
}

std::string quote(const std::string& field) {
  bool plain = field.find_first_of(",\"\\") == std::string::npos &&
               (field.empty() || (field.front() != ' ' && field.back() != ' '));
  if (plain) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& sus_csv_header() {
  static const std::vector<std::string> header = {
      "item1",   "item2",   "item3",    "item4",         "item5",           "item6",
      "item7",   "item8",   "item9",    "item10",        "mode",            "respondent_id",
      "program", "first_course", "completed_courses", "experience",   "comfort",
      "attitude", "course_attitude", "used_internet", "resources"};
  return header;
}

SusCsv parse_sus_csv(std::string_view text) {
  SusCsv out;
  bool saw_version = false;
  bool saw_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;

    if (!saw_version) {
      std::string compact;
      for (char c : line) {
        if (c != ' ' && c != '\t') compact += c;
      }
      if (compact != "format_version," + std::to_string(kSusCsvFormatVersion)) {
        throw SusFileError("line " + std::to_string(line_no) + ": expected 'format_version," +
                           std::to_string(kSusCsvFormatVersion) + "'");
      }
      saw_version = true;
      continue;
    }
    std::vector<std::string> fields;
    try {
      fields = split_fields(line);
    } catch (const boost::escaped_list_error& e) {
      if (!saw_header) throw SusFileError("line " + std::to_string(line_no) + ": malformed header");
      out.rejected.push_back({line_no, std::string("malformed quoting: ") + e.what()});
      continue;
    }
    if (!saw_header) {
      if (fields != sus_csv_header()) {
        throw SusFileError("line " + std::to_string(line_no) + ": header must be the documented columns");
      }
      saw_header = true;
      continue;
    }
    try {
      out.responses.push_back(parse_row(fields));
    } catch (const RowError& e) {
      out.rejected.push_back({line_no, e.reason});
    }
  }
  if (!saw_version) throw SusFileError("empty response file");
  if (!saw_header) throw SusFileError("missing header row");
  return out;
}

std::string sus_csv_row(const SusResponse& r) {
  std::vector<std::string> f;
  for (int item : r.items) f.push_back(std::to_string(item));
  const Respondent& p = r.respondent;
  std::string resources;
  for (const auto& tag : p.resources) resources += (resources.empty() ? "" : ";") + tag;
  for (std::string v : {std::string(to_string(r.mode)), p.respondent_id,
                        std::string(to_string(p.academic_program)), std::string(p.first_course ? "yes" : "no"),
                        std::string(to_string(p.completed_courses)), std::to_string(p.experience),
                        std::to_string(p.comfort), std::to_string(p.attitude),
                        std::to_string(p.course_attitude), std::string(p.used_internet ? "yes" : "no"),
                        resources}) {
    f.push_back(std::move(v));
  }
  std::string line;
  for (std::size_t i = 0; i < f.size(); ++i) line += (i ? "," : "") + quote(f[i]);
  return line;
}

std::string write_sus_csv(const std::vector<SusResponse>& responses) {
  std::string out = "format_version," + std::to_string(kSusCsvFormatVersion) + "\n";
  const auto& header = sus_csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& r : responses) out += sus_csv_row(r) + "\n";
  return out;
}

}  // namespace line_explorer::sus
