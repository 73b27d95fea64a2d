// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "line_explorer/grading/submission.hpp"
#include "line_explorer/lang/parser.hpp"
#include "line_explorer/server/server.hpp"
#include "line_explorer/sus/cohort.hpp"
#include "line_explorer/sus/csv.hpp"
#include "line_explorer/sus/report.hpp"
#include "line_explorer/tracer/execute.hpp"
#include "line_explorer/tracer/export.hpp"
#include "paths.hpp"
#include "program_generator.hpp"
#include "reference_interpreter.hpp"
#include "replay.hpp"
#include "sus_oracle.hpp"
#include "wire.hpp"

using namespace line_explorer;

namespace {

using Failures = std::vector<std::string>;

struct Criterion {
  std::string name;
  double time_limit_s;  // 0: untimed
  std::function<void(Failures&, std::string& detail)> run;
};

template <class T>
std::string str(const T& v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

// ---- SUS formula

double by_hand(const std::vector<int>& items) {
  int odd = 0, even = 0;
  for (int i = 0; i < 10; i += 2) odd += items[i] - 1;
  for (int i = 1; i < 10; i += 2) even += 5 - items[i];
  return 2.5 * (odd + even);
}

void sus_formula(Failures& f, std::string& detail) {
  auto expect = [&](const std::vector<int>& items, double want) {
    double got = sus::sus_score(items);
    if (got != want) f.push_back("score " + str(got) + ", wanted " + str(want));
  };
  expect(std::vector<int>(10, 3), 50.0);
  expect({5, 1, 5, 1, 5, 1, 5, 1, 5, 1}, 100.0);
  expect({1, 5, 1, 5, 1, 5, 1, 5, 1, 5}, 0.0);

  std::mt19937_64 rng(1410);
  std::uniform_int_distribution<int> likert(1, 5);
  std::vector<int> items(10);
  const int checked = 200000;
  for (int n = 0; n < checked; ++n) {
    for (auto& x : items) x = likert(rng);
    double s = sus::sus_score(items);
    if (s != by_hand(items) || std::fmod(s, 2.5) != 0.0 || s < 0 || s > 100) {
      f.push_back("bad score " + str(s));
      return;
    }
    int i = n % 10;
    if (items[i] < 5) {
      items[i] += 1;
      double step = sus::sus_score(items) - s;
      if (step != (i % 2 == 0 ? 2.5 : -2.5)) {
        f.push_back("item " + str(i + 1) + " step " + str(step));
        return;
      }
    }
  }
  detail = str(checked) + " random response vectors";
}

// ---- classification

std::string band(double score) {
  // Adjective bands, [lower, upper), the top one closed at 100.
  struct Band {
    double lo;
    const char* name;
  };
  static const Band bands[] = {{85, "Best imaginable"}, {73, "Excellent"}, {52, "Good"},
                              {38, "OK"},              {25, "Poor"},      {0, "Worst imaginable"}};
  for (const auto& b : bands) {
    if (score >= b.lo) return b.name;
  }
  return "?";
}

void classification(Failures& f, std::string& detail) {
  const std::vector<std::pair<double, std::string>> cohort_examples = {
      {60.1, "Good"}, {59.8, "Good"}, {57.2, "Good"}, {56.3, "Good"}, {49.5, "OK"}, {52.2, "Good"}};
  for (const auto& [score, want] : cohort_examples) {
    std::string got(sus::to_string(sus::classify(score)));
    if (got != want) f.push_back("classify(" + str(score) + ") = " + got + ", wanted " + want);
  }
  const std::vector<std::pair<double, std::string>> edges = {
      {0, "Worst imaginable"}, {24.9, "Worst imaginable"}, {25, "Poor"},    {37.9, "Poor"},
      {38, "OK"},              {51.9, "OK"},               {52, "Good"},    {72.9, "Good"},
      {73, "Excellent"},       {84.9, "Excellent"},        {85, "Best imaginable"}, {100, "Best imaginable"}};
  for (const auto& [score, want] : edges) {
    std::string got(sus::to_string(sus::classify(score)));
    if (got != want) f.push_back("classify(" + str(score) + ") = " + got + ", wanted " + want);
  }
  // Every score a respondent can produce, against the band table above.
  for (int k = 0; k <= 40; ++k) {
    double s = 2.5 * k;
    if (std::string(sus::to_string(sus::classify(s))) != band(s)) f.push_back("classify(" + str(s) + ")");
  }
  detail = str(cohort_examples.size()) + " example means, " + str(edges.size()) + " boundaries, 41 reachable scores";
}

// ---- tracer oracle

void tracer_oracle(Failures& f, std::string& detail) {
  std::mt19937_64 rng(20240);
  const int generated = 200;
  for (int i = 0; i < generated; ++i) {
    std::string text = support::generate_program(rng, {3, 2, 12, true});
    auto program = lang::parse(text);
    std::string diff = support::compare_with_tracer(program, {}, 200);
    if (!diff.empty()) f.push_back("generated program " + str(i) + ": " + diff + "\n" + text);
  }
  const std::vector<std::pair<std::string, lang::Environment>> goldens = {
      {"straight_line", {}}, {"count_loop", {}},  {"sum_to_n", {{"n", lang::Value::integer(3)}}},
      {"digit_sum", {}},     {"max_of_two", {}},  {"nested_loops", {}},
      {"empty_body", {}}};
  for (const auto& [name, env] : goldens) {
    auto program = lang::parse(support::read_file(support::fixtures_dir() / "programs" / (name + ".le")));
    std::string want = support::read_file(support::golden_dir() / (name + ".tsv"));
    if (tracer::render_trace_tsv(tracer::execute(program, env)) != want) f.push_back("golden " + name + " differs");
  }
  detail = str(generated) + " generated programs, " + str(goldens.size()) + " goldens";
}

// ---- grading

void grading_identity(Failures& f, std::string& detail) {
  int exercises = 0, perturbations = 0;
  for (const auto& ex : support::shipped_with_mode(io::ExerciseMode::Evaluation)) {
    ++exercises;
    auto rows = support::truth_rows(ex);
    auto s = support::replay_truth(ex, grading::EvalSession::begin(ex, "acc"), rows);
    auto done = grading::submit(s, ex);
    if (done.result.score_percent != 100.0 || done.result.correct_cells != done.result.total_cells) {
      f.push_back(ex.id() + ": truth scored " + str(done.result.score_percent));
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
      for (const auto& [var, value] : rows[k]) {
        auto changed = rows;
        changed[k][var] = support::perturb(value);
        auto r = grading::submit(support::replay_truth(ex, grading::EvalSession::begin(ex, "acc"), changed), ex);
        ++perturbations;
        if (r.result.correct_cells != r.result.total_cells - 1) {
          f.push_back(ex.id() + " step " + str(k) + " " + var + ": " + str(r.result.correct_cells) + "/" +
                      str(r.result.total_cells));
        }
      }
    }
  }
  if (exercises == 0) f.push_back("no evaluation exercises");
  detail = str(exercises) + " exercises, " + str(perturbations) + " single-cell perturbations";
}

void undo_inverse(Failures& f, std::string& detail) {
  auto exercises = support::shipped_with_mode(io::ExerciseMode::Evaluation);
  exercises.push_back(support::prepare_inline(
      "long-loop", "a = 0\nb = 1\nwhile a < 5 {\n  b = b * 2\n  a = a + 1\n}\nc = a + b\n",
      {io::ExerciseMode::Evaluation}));
  std::mt19937_64 rng(4711);
  support::UndoCheckStats stats;
  int sequences = 0;
  while (sequences < 1200) {
    for (const auto& ex : exercises) {
      std::string err = support::check_undo_inverse(ex, rng, 60, &stats);
      ++sequences;
      if (!err.empty()) f.push_back(ex.id() + ": " + err);
    }
  }
  if (stats.make_loops == 0 || stats.undos == 0) f.push_back("walks never used make-loop or undo");
  detail = str(sequences) + " sequences, " + str(stats.applied) + " checked actions (" + str(stats.make_loops) +
           " make-loop), " + str(stats.undos) + " undos";
}

// ---- no leak

void no_leak(Failures& f, std::string& detail) {
  support::TempDir data;
  server::ServerConfig cfg;
  cfg.port = 0;
  cfg.exercises_dir = support::exercises_dir();
  cfg.data_dir = data.path();
  server::Server srv(cfg, nullptr);
  int port = srv.start();
  std::size_t scanned = 0;
  int exercises = 0;
  for (const auto& ex : support::shipped_with_mode(io::ExerciseMode::Evaluation)) {
    ++exercises;
    support::RecordingClient client(port);
    auto run = support::drive_session(client, ex, ex.id(), "zz", true);
    auto truth = support::truth_renderings(ex);
    for (const auto& x : client.log()) {
      ++scanned;
      for (const auto& leak : support::leaf_leaks(x.response_body, truth)) {
        f.push_back(ex.id() + " " + x.method + " " + x.path + ": " + leak);
      }
    }
    // The scanner must flag truth once the submit response releases it.
    auto& sub = client.post("/api/sessions/" + run.session_id + "/submit", support::Json{{"revision", run.revision}});
    if (sub.status != 200 || support::leaf_leaks(sub.response_body, truth).empty()) {
      f.push_back(ex.id() + ": scanner did not see truth in the submit response");
    }
  }
  srv.stop();
  detail = str(exercises) + " exercises, " + str(scanned) + " pre-submit responses";
}

// ---- step limit

void step_limit(Failures& f, std::string& detail) {
  auto program = lang::parse(support::read_file(support::fixtures_dir() / "programs" / "infinite.le"));
  for (int max : {1, 50, 1000, 10000}) {
    auto t = tracer::execute(program, {}, {max});
    if (t.terminated != tracer::Termination::StepLimit || static_cast<int>(t.steps.size()) != max) {
      f.push_back("max_steps " + str(max) + ": " + str(t.steps.size()) + " steps");
    }
  }
  detail = "max_steps 1, 50, 1000, 10000";
}

// ---- cohort

void cohort(Failures& f, std::string& detail) {
  const std::string text = support::read_file(support::fixtures_dir() / "sus_synthetic_30.csv");
  auto csv = sus::parse_sus_csv(text);
  if (csv.responses.size() != 30 || !csv.rejected.empty()) f.push_back("fixture did not load 30 rows");
  const std::vector<std::vector<sus::GroupField>> groupings = {
      {sus::GroupField::Program},
      {sus::GroupField::Program, sus::GroupField::FirstCourse},
      {sus::GroupField::Program, sus::GroupField::Comfort},
      {sus::GroupField::Program, sus::GroupField::CourseAttitude}};
  int cells = 0;
  for (const auto& g : groupings) {
    std::vector<std::string> cols;
    for (auto field : g) cols.emplace_back(sus::to_string(field));
    auto oracle = support::oracle_means(text, cols);
    auto means = sus::cohort_means(csv.responses, g);
    if (means.size() != oracle.size()) f.push_back("group count differs for " + cols.back());
    for (const auto& m : means) {
      std::string key;
      for (const auto& k : m.group_key) key += k + "|";
      key += sus::to_string(m.mode);
      auto it = oracle.find(key);
      if (it == oracle.end()) {
        f.push_back("no oracle cell " + key);
        continue;
      }
      ++cells;
      double ours = std::stod(sus::format_mean(m.mean));
      if (std::fabs(ours - it->second.mean_1dp) > 0.05 + 1e-9 || m.n != it->second.n) {
        f.push_back(key + ": " + sus::format_mean(m.mean) + " vs " + str(it->second.mean_1dp));
      }
    }
  }
  detail = "4 groupings, " + str(cells) + " cells";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"sus-formula", 1.0, sus_formula},
      {"classification-bands", 0, classification},
      {"tracer-oracle", 10.0, tracer_oracle},
      {"grading-identity-and-sensitivity", 0, grading_identity},
      {"undo-inverse", 30.0, undo_inverse},
      {"no-leak", 0, no_leak},
      {"step-limit", 0, step_limit},
      {"cohort-reporting", 0, cohort},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Failures f;
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(f, detail);
    } catch (const std::exception& e) {
      f.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      f.push_back("took " + str(secs) + " s, limit " + str(c.time_limit_s) + " s");
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", secs);
    if (f.empty()) {
      std::cout << "PASS " << c.name << " [" << timing << "] " << detail << "\n";
    } else {
      ++failed;
      std::cout << "FAIL " << c.name << " [" << timing << "] " << f.size() << " problem(s); first: " << f.front()
                << "\n";
    }
  }
  std::cout << (failed ? "FAILED " + str(failed) + " of " : "ALL PASSED: ") << criteria.size() << " criteria\n";
  return failed ? 1 : 0;
}
