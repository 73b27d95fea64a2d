#include <CLI11.hpp>

#include <charconv>
#include <pthread.h>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "line_explorer/grading/submission.hpp"
#include "line_explorer/io/answer_sheet.hpp"
#include "line_explorer/io/exercise_doc.hpp"
#include "line_explorer/io/json_codec.hpp"
#include "line_explorer/lang/lexer.hpp"
#include "line_explorer/lang/parser.hpp"
#include "line_explorer/lang/validate.hpp"
#include "line_explorer/server/server.hpp"
#include "line_explorer/sus/cohort.hpp"
#include "line_explorer/sus/csv.hpp"
#include "line_explorer/sus/report.hpp"
#include "line_explorer/tracer/execute.hpp"
#include "line_explorer/tracer/export.hpp"

namespace fs = std::filesystem;
using namespace line_explorer;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

// Thrown by a command to end with a message on stderr and a given exit code.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kInvalid, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_exercise_file(const std::string& path) {
  auto ext = fs::path(path).extension();
  return ext == ".yaml" || ext == ".yml";
}

std::string pad(const std::string& s, std::size_t width, bool left) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

// Aligned columns, first one left-aligned, trailing blanks trimmed.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows) {
    widths.resize(std::max(widths.size(), r.size()));
    for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) line += "  ";
      line += pad(r[c], widths[c], c == 0);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string one_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

void print_diagnostics(const std::vector<lang::Diagnostic>& diags, const std::string& file) {
  for (const auto& d : diags) std::cerr << file << ": " << lang::format(d) << "\n";
}

// ---- trace

struct TraceOptions {
  std::string file;
  std::vector<std::string> env;
  int max_steps = 0;
  std::string format = "text";
};

int cmd_trace(const TraceOptions& o) {
  std::string source_text;
  lang::Environment env;
  tracer::ExecutionLimits limits;
  if (is_exercise_file(o.file)) {
    io::Exercise ex;
    try {
      ex = io::parse_exercise_document(read_file(o.file));
    } catch (const Error& e) {
      throw Exit{kInvalid, o.file + ": " + e.what()};
    }
    source_text = ex.source.text();
    env = ex.initial_env;
    limits = ex.limits;
  } else {
    source_text = read_file(o.file);
  }
  std::vector<std::string> assignments;
  for (const auto& item : o.env) {
    std::istringstream words(item);
    for (std::string w; words >> w;) assignments.push_back(w);
  }
  for (const auto& assignment : assignments) {
    auto eq = assignment.find('=');
    std::string name = assignment.substr(0, eq);
    if (eq == std::string::npos || !lang::is_identifier(name)) {
      throw Exit{kInvalid, "--env expects NAME=VALUE, got '" + assignment + "'"};
    }
    auto value = lang::parse_value_literal(assignment.substr(eq + 1));
    if (!value) throw Exit{kInvalid, "--env " + name + ": value must be an integer or true/false"};
    env[name] = *value;
  }
  if (o.max_steps > 0) limits.max_steps = o.max_steps;

  lang::Program program;
  try {
    program = lang::parse(source_text);
  } catch (const lang::ParseError& e) {
    throw Exit{kInvalid, o.file + ": ParseError: " + e.what()};
  }
  auto diags = lang::validate(program, env, lang::ExerciseMode::Demonstration);
  print_diagnostics(diags, o.file);
  if (lang::has_errors(diags)) return kInvalid;

  try {
    auto trace = tracer::execute(program, env, limits);
    std::cout << (o.format == "machine" ? tracer::render_trace_tsv(trace) : tracer::render_trace_table(trace));
    if (trace.terminated == tracer::Termination::StepLimit) {
      std::cout.flush();
      std::cerr << "StepLimit: stopped after " << limits.max_steps << " steps\n";
      return kRuntime;
    }
  } catch (const tracer::RuntimeError& e) {
    std::cout << (o.format == "machine" ? tracer::render_trace_tsv(e.partial_trace())
                                        : tracer::render_trace_table(e.partial_trace()));
    std::cout.flush();
    std::cerr << "RuntimeError: " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}

// ---- validate

io::PreparedExercise load_or_exit(const std::string& file, bool print_warnings) {
  try {
    auto p = io::load_exercise(file);
    if (print_warnings) print_diagnostics(p.warnings(), file);
    return p;
  } catch (const io::ExerciseError& e) {
    if (e.diagnostics().empty()) {
      std::cerr << file << ": " << e.code() << ": " << e.what() << "\n";
    } else {
      std::cerr << file << ": " << e.code() << "\n";
      print_diagnostics(e.diagnostics(), file);
    }
    throw Exit{e.kind() == io::ExerciseErrorKind::Trace ? kRuntime : kInvalid, ""};
  } catch (const Error& e) {
    throw Exit{kInvalid, file + ": " + e.code() + ": " + e.what()};
  }
}

int cmd_validate(const std::vector<std::string>& files) {
  int worst = kOk;
  for (const auto& f : files) {
    try {
      auto p = load_or_exit(f, true);
      std::string modes;
      for (auto m : p.exercise().modes) modes += (modes.empty() ? "" : ", ") + std::string(lang::to_string(m));
      std::cout << f << ": ok (" << p.id() << "; " << modes << "; " << p.trace().steps.size() << " steps)\n";
    } catch (const Exit& e) {
      if (!e.message.empty()) std::cerr << e.message << "\n";
      worst = std::max(worst, e.code);
    }
  }
  return worst;
}

// ---- grade

std::string cell_text(const grading::CellResult& c) {
  switch (c.verdict.kind) {
    case grading::VerdictKind::Correct: return "ok";
    case grading::VerdictKind::NotExecuted: return "n/e";
    case grading::VerdictKind::Incorrect: return "x:" + c.expected.value_or("-");
  }
  return "?";
}

int cmd_grade(const std::string& exercise_file, const std::string& answers_file, const std::string& format) {
  auto p = load_or_exit(exercise_file, false);
  std::vector<grading::AnswerStep> answers;
  try {
    answers = io::parse_answer_sheet(read_file(answers_file));
  } catch (const Error& e) {
    throw Exit{kInvalid, answers_file + ": " + e.what()};
  }
  auto result = grading::grade(answers, p);
  if (format == "machine") {
    std::cout << io::to_json(result).dump(2) << "\n";
    return kOk;
  }
  std::cout << "exercise: " << p.id() << "\n"
            << "score: " << one_decimal(result.score_percent) << " (" << result.correct_cells << "/"
            << result.total_cells << " cells)\n"
            << "path: " << result.path_matched_steps << "/" << result.truth_steps << " steps\n\n";
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"step", "answered", "truth"};
  for (const auto& c : p.columns()) header.push_back(c);
  rows.push_back(header);
  for (const auto& s : result.per_step) {
    std::vector<std::string> row{std::to_string(s.ordinal),
                                 s.answered_line ? std::to_string(*s.answered_line) : "-",
                                 s.truth_line ? std::to_string(*s.truth_line) : "-"};
    for (const auto& c : s.cells) row.push_back(cell_text(c));
    rows.push_back(std::move(row));
  }
  std::cout << render_table(rows);
  return kOk;
}

// ---- sus

int cmd_sus_score(const std::vector<std::string>& args, const std::string& format) {
  if (args.size() == 10) {
    std::vector<int> items;
    for (const auto& a : args) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
      if (ec != std::errc() || ptr != a.data() + a.size()) throw Exit{kInvalid, "item '" + a + "' is not an integer"};
      items.push_back(v);
    }
    try {
      double s = sus::sus_score(items);
      std::cout << (format == "machine" ? one_decimal(s) + "," + std::string(sus::to_string(sus::classify(s)))
                                        : one_decimal(s) + "  " + std::string(sus::to_string(sus::classify(s))))
                << "\n";
    } catch (const Error& e) {
      throw Exit{kInvalid, e.code() + ": " + e.what()};
    }
    return kOk;
  }
  if (args.size() != 1) throw Exit{kInvalid, "sus score takes ten item responses or one response file"};
  sus::SusCsv csv;
  try {
    csv = sus::parse_sus_csv(read_file(args[0]));
  } catch (const Error& e) {
    throw Exit{kInvalid, args[0] + ": " + e.what()};
  }
  for (const auto& r : csv.rejected) std::cerr << args[0] << ": line " << r.line << ": " << r.reason << "\n";
  std::vector<std::vector<std::string>> rows{{"respondent", "mode", "score", "rating"}};
  for (const auto& r : csv.responses) {
    double s = sus::sus_score(r);
    rows.push_back({r.respondent.respondent_id, std::string(sus::to_string(r.mode)), one_decimal(s),
                    std::string(sus::to_string(sus::classify(s)))});
  }
  if (format == "machine") {
    for (const auto& row : rows) std::cout << row[0] << "," << row[1] << "," << row[2] << "," << row[3] << "\n";
  } else {
    std::cout << render_table(rows);
  }
  return csv.rejected.empty() ? kOk : kInvalid;
}

int cmd_sus_report(const std::string& file, const std::vector<std::string>& group_by, const std::string& format) {
  std::vector<sus::GroupField> fields;
  for (const auto& g : group_by) {
    std::stringstream ss(g);
    std::string name;
    while (std::getline(ss, name, ',')) {
      auto f = sus::parse_group_field(name);
      if (!f) throw Exit{kInvalid, "unknown --group-by field '" + name + "'"};
      fields.push_back(*f);
    }
  }
  if (fields.empty()) fields.push_back(sus::GroupField::Program);
  sus::SusCsv csv;
  try {
    csv = sus::parse_sus_csv(read_file(file));
  } catch (const Error& e) {
    throw Exit{kInvalid, file + ": " + e.what()};
  }
  for (const auto& r : csv.rejected) std::cerr << file << ": line " << r.line << ": " << r.reason << "\n";
  try {
    auto means = sus::cohort_means(csv.responses, fields);
    std::cout << (format == "machine" ? sus::render_report_machine(means, fields)
                                      : sus::render_report_text(means, fields));
    return csv.rejected.empty() ? kOk : kInvalid;
  } catch (const std::invalid_argument& e) {
    throw Exit{kInvalid, e.what()};
  } catch (const Error& e) {
    throw Exit{kInvalid, e.code() + ": " + e.what()};
  }
  return kOk;
}

// ---- serve

int cmd_serve(server::ServerConfig cfg, int ttl_hours, bool quiet) {
  cfg.session_ttl = std::chrono::hours(ttl_hours);
  cfg.access_log = !quiet;
  // Server threads inherit the blocked mask; the main thread takes the
  // signals with sigwait and shuts down outside any handler.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
  try {
    server::Server srv(cfg, &std::cerr);
    srv.start();
    int sig = 0;
    sigwait(&stop_signals, &sig);
    srv.stop();
  } catch (const server::StartupError& e) {
    throw Exit{kInvalid, std::string("startup failed: ") + e.what()};
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"line_explorer: trace, validate and grade code-tracing exercises; serve the tutor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "line_explorer 1.0");

  const auto formats = CLI::IsMember({"text", "machine"});

  TraceOptions trace;
  auto* t = app.add_subcommand("trace", "Print the execution trace of a program or exercise file");
  t->add_option("file", trace.file, "Program source (.le or any text) or exercise (.yaml)")->required();
  t->add_option("--env", trace.env, "Initial value NAME=VALUE (repeatable)")->envname("LINE_EXPLORER_ENV");
  t->add_option("--max-steps", trace.max_steps, "Stop after this many steps")
      ->check(CLI::PositiveNumber)
      ->envname("LINE_EXPLORER_MAX_STEPS");
  t->add_option("--format", trace.format, "text or machine (TSV)")->check(formats)->envname("LINE_EXPLORER_FORMAT");

  std::vector<std::string> validate_files;
  auto* v = app.add_subcommand("validate", "Check exercise files for publishing");
  v->add_option("files", validate_files, "Exercise files")->required();

  std::string grade_exercise, grade_answers, grade_format = "text";
  auto* g = app.add_subcommand("grade", "Grade an answer sheet against an exercise");
  g->add_option("exercise", grade_exercise, "Exercise file")->required();
  g->add_option("answers", grade_answers, "Answer sheet (TSV or JSON)")->required();
  g->add_option("--format", grade_format, "text or machine (JSON)")->check(formats)->envname("LINE_EXPLORER_FORMAT");

  auto* s = app.add_subcommand("sus", "System Usability Scale scoring and reports");
  s->require_subcommand(1);
  std::vector<std::string> score_args;
  std::string sus_format = "text";
  auto* ss = s->add_subcommand("score", "Score ten item responses, or every row of a response file");
  ss->add_option("input", score_args, "Ten responses 1..5, or a response CSV")->required();
  ss->add_option("--format", sus_format, "text or machine (CSV)")->check(formats)->envname("LINE_EXPLORER_FORMAT");
  std::string report_file;
  std::vector<std::string> group_by;
  auto* sr = s->add_subcommand("report", "Mean scores per cohort and mode");
  sr->add_option("file", report_file, "Response CSV")->required();
  sr->add_option("--group-by", group_by, "Field, or two comma-separated fields (default program)")
      ->envname("LINE_EXPLORER_GROUP_BY");
  sr->add_option("--format", sus_format, "text or machine (CSV)")->check(formats)->envname("LINE_EXPLORER_FORMAT");

  server::ServerConfig cfg;
  cfg.exercises_dir = "exercises";
  cfg.data_dir = "data";
  std::string media_dir, ui_dir, questionnaire;
  int ttl_hours = 24;
  bool quiet = false;
  auto* sv = app.add_subcommand("serve", "Run the HTTP server");
  sv->add_option("--host", cfg.host, "Listen address")->envname("LINE_EXPLORER_HOST");
  sv->add_option("--port", cfg.port, "Listen port (0 picks a free one)")
      ->check(CLI::Range(0, 65535))
      ->envname("LINE_EXPLORER_PORT");
  sv->add_option("--exercises-dir", cfg.exercises_dir, "Directory of exercise files")
      ->envname("LINE_EXPLORER_EXERCISES_DIR");
  sv->add_option("--data-dir", cfg.data_dir, "Where submissions and SUS responses are written")
      ->envname("LINE_EXPLORER_DATA_DIR");
  sv->add_option("--media-dir", media_dir, "Audio and video root (default: exercises dir)")
      ->envname("LINE_EXPLORER_MEDIA_DIR");
  sv->add_option("--ui-dir", ui_dir, "Static UI files served at /")->envname("LINE_EXPLORER_UI_DIR");
  sv->add_option("--questionnaire", questionnaire, "Ten SUS statements, one per line")
      ->envname("LINE_EXPLORER_QUESTIONNAIRE");
  sv->add_option("--session-ttl-hours", ttl_hours, "Idle time before a session expires")
      ->check(CLI::PositiveNumber)
      ->envname("LINE_EXPLORER_SESSION_TTL_HOURS");
  sv->add_option("--max-body-bytes", cfg.max_body_bytes, "Request body limit")
      ->check(CLI::PositiveNumber)
      ->envname("LINE_EXPLORER_MAX_BODY_BYTES");
  sv->add_flag("--quiet", quiet, "No access log");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*t) return cmd_trace(trace);
    if (*v) return cmd_validate(validate_files);
    if (*g) return cmd_grade(grade_exercise, grade_answers, grade_format);
    if (*ss) return cmd_sus_score(score_args, sus_format);
    if (*sr) return cmd_sus_report(report_file, group_by, sus_format);
    if (*sv) {
      if (!media_dir.empty()) cfg.media_dir = media_dir;
      if (!ui_dir.empty()) cfg.ui_dir = ui_dir;
      if (!questionnaire.empty()) cfg.questionnaire_file = questionnaire;
      return cmd_serve(cfg, ttl_hours, quiet);
    }
  } catch (const Exit& e) {
    if (!e.message.empty()) std::cerr << e.message << "\n";
    return e.code;
  }
  return kInvalid;
}
