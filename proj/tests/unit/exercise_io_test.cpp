#include <gtest/gtest.h>

#include <fstream>

#include "line_explorer/io/exercise_doc.hpp"
#include "paths.hpp"

using namespace line_explorer;
using namespace line_explorer::io;
using support::TempDir;

namespace {

std::string doc(const std::string& modes, const std::string& source, const std::string& extra = "") {
  std::string out = "format_version: 1\nid: sample\ntitle: Sample\nmodes: [" + modes + "]\n" + extra +
                    "source: |\n";
  std::size_t start = 0;
  while (start < source.size()) {
    auto end = source.find('\n', start);
    out += "  " + source.substr(start, end - start) + "\n";
    start = end == std::string::npos ? source.size() : end + 1;
  }
  return out;
}

ExerciseError load_error(const std::string& text) {
  try {
    load_exercise_text(text);
  } catch (const ExerciseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ExerciseError";
  return ExerciseError(ExerciseErrorKind::Schema, "none");
}

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

}  // namespace

TEST(ShippedExercises, LoadWithZeroDiagnostics) {
  auto files = support::shipped_exercises();
  ASSERT_GE(files.size(), 5u);
  for (const auto& f : files) {
    SCOPED_TRACE(f.string());
    PreparedExercise p = load_exercise(f);
    EXPECT_TRUE(p.warnings().empty());
    EXPECT_EQ(p.trace().terminated, tracer::Termination::Normal);
    EXPECT_FALSE(p.trace().steps.empty());
  }
}

TEST(ShippedExercises, CountLoopHasBothModes) {
  PreparedExercise p = load_exercise(support::exercises_dir() / "count-loop.yaml");
  EXPECT_EQ(p.id(), "count-loop");
  EXPECT_EQ(p.exercise().modes,
            (std::set<ExerciseMode>{ExerciseMode::Demonstration, ExerciseMode::Evaluation}));
  EXPECT_EQ(p.trace().steps.size(), 6u);
  EXPECT_EQ(p.columns(), std::vector<std::string>{"i"});
}

TEST(ShippedExercises, RoundTripIsStructurallyEqual) {
  for (const auto& f : support::shipped_exercises()) {
    SCOPED_TRACE(f.string());
    Exercise original = parse_exercise_document(support::read_file(f));
    std::string written = write_exercise_document(original);
    EXPECT_EQ(parse_exercise_document(written), original) << written;
    EXPECT_EQ(write_exercise_document(parse_exercise_document(written)), written);
  }
}

TEST(ExerciseDocument, RoundTripsAwkwardText) {
  Exercise ex;
  ex.id = "awkward_1";
  ex.title = "yes: \"quoted\" # not a comment";
  ex.assumptions_text = "first line\n  indented second\n\nafter blank";
  ex.initial_env = {{"n", lang::Value::integer(-4)}, {"flag", lang::Value::boolean(true)}};
  ex.source = lang::SourceProgram("  x = 1\n\ny = 2\n\n");
  ex.modes = {ExerciseMode::Evaluation};
  ex.media.video = "intro video.mp4";
  ex.media.audio = {{1, "a/1.mp3"}, {3, std::nullopt}};
  ex.limits.max_steps = 77;
  EXPECT_EQ(parse_exercise_document(write_exercise_document(ex)), ex) << write_exercise_document(ex);
}

TEST(ExerciseDocument, ParsesEveryField) {
  Exercise ex = parse_exercise_document(doc("evaluation", "total = n",
                                            "assumptions: |\n  n is 3\ninitial_env:\n  n: 3\n  "
                                            "ok: false\nlimits:\n  max_steps: 40\nmedia:\n  video: "
                                            "v.mp4\n  audio:\n    1: one.mp3\n"));
  EXPECT_EQ(ex.assumptions_text, "n is 3");
  EXPECT_EQ(ex.initial_env.at("n"), lang::Value::integer(3));
  EXPECT_EQ(ex.initial_env.at("ok"), lang::Value::boolean(false));
  EXPECT_EQ(ex.limits.max_steps, 40);
  EXPECT_EQ(ex.media.video, "v.mp4");
  EXPECT_EQ(ex.media.audio.at(1), "one.mp3");
  EXPECT_EQ(ex.source.lines(), std::vector<std::string>{"total = n"});
}

TEST(ExerciseDocument, SchemaErrors) {
  const std::vector<std::string> bad = {
      "just a string",
      "format_version: 1\nid: x\n",                                              // missing keys
      "format_version: 2\nid: x\ntitle: t\nmodes: [evaluation]\nsource: x = 1\n",  // version
      doc("evaluation", "x = 1", "colour: red\n"),                               // unknown key
      doc("teaching", "x = 1"),                                                  // mode
      doc("evaluation", "x = 1", "initial_env:\n  while: 1\n"),                  // keyword name
      doc("evaluation", "x = 1", "initial_env:\n  n: three\n"),                  // value
      doc("evaluation", "x = 1", "limits:\n  max_steps: 0\n"),
      doc("evaluation", "x = 1", "media:\n  audio:\n    zero: a.mp3\n"),
      "format_version: 1\nid: [unclosed\n",
  };
  for (const auto& text : bad) {
    SCOPED_TRACE(text);
    ExerciseError e = load_error(text);
    EXPECT_EQ(e.kind(), ExerciseErrorKind::Schema);
    EXPECT_EQ(e.code(), "SchemaError");
  }
}

TEST(ExerciseDocument, RejectsBadSlug) {
  std::string text = doc("evaluation", "x = 1");
  text.replace(text.find("id: sample"), 10, "id: Not A Slug");
  EXPECT_EQ(load_error(text).kind(), ExerciseErrorKind::Schema);
}

TEST(LoadExercise, UseBeforeAssignIsValidationError) {
  ExerciseError e = load_error(doc("evaluation", "y = x + 1"));
  EXPECT_EQ(e.kind(), ExerciseErrorKind::Validation);
  EXPECT_EQ(e.code(), "ValidationError");
  ASSERT_EQ(e.diagnostics().size(), 1u);
  EXPECT_EQ(e.diagnostics()[0].code, "use-before-assign");
  EXPECT_EQ(e.diagnostics()[0].line, 1);
  EXPECT_NE(std::string(e.what()).find("use-before-assign"), std::string::npos);
}

TEST(LoadExercise, ConditionalRejectedForEvaluation) {
  std::string src = "a = 1\nif a > 0 {\n  a = 2\n}";
  ExerciseError e = load_error(doc("evaluation", src));
  EXPECT_EQ(e.kind(), ExerciseErrorKind::Validation);
  EXPECT_TRUE(has_code(e.diagnostics(), "conditional-in-evaluation"));
  std::string audio = "media:\n  audio:\n    1: none\n    2: none\n    3: none\n";
  EXPECT_NO_THROW(load_exercise_text(doc("demonstration", src, audio)));
}

TEST(LoadExercise, ParseErrorIsValidationError) {
  ExerciseError e = load_error(doc("evaluation", "x = 1\nwhile x <"));
  EXPECT_EQ(e.kind(), ExerciseErrorKind::Validation);
  ASSERT_EQ(e.diagnostics().size(), 1u);
  EXPECT_EQ(e.diagnostics()[0].code, "parse-error");
  EXPECT_EQ(e.diagnostics()[0].line, 2);
}

TEST(LoadExercise, DemonstrationNeedsAudioForEveryExecutableLine) {
  ExerciseError e = load_error(doc("demonstration", "x = 1\ny = 2",
                                   "media:\n  audio:\n    1: one.mp3\n"));
  EXPECT_EQ(e.kind(), ExerciseErrorKind::Validation);
  ASSERT_EQ(e.diagnostics().size(), 1u);
  EXPECT_EQ(e.diagnostics()[0].code, "missing-audio");
  EXPECT_EQ(e.diagnostics()[0].line, 2);

  ExerciseError stray = load_error(doc("evaluation", "x = 1", "media:\n  audio:\n    4: none\n"));
  EXPECT_TRUE(has_code(stray.diagnostics(), "audio-on-non-executable-line"));
}

TEST(LoadExercise, MissingMediaIsAWarning) {
  TempDir dir;
  std::ofstream(dir.path() / "one.mp3") << "ID3";
  std::string text = doc("demonstration", "x = 1\ny = 2",
                         "media:\n  video: intro.mp4\n  audio:\n    1: one.mp3\n    2: two.mp3\n");
  PreparedExercise p = load_exercise_text(text, dir.path());
  ASSERT_EQ(p.warnings().size(), 2u);
  EXPECT_EQ(p.warnings()[0].severity, lang::Severity::Warning);
  EXPECT_EQ(p.warnings()[0].code, "media-missing");
  EXPECT_EQ(p.warnings()[0].line, 1);
  EXPECT_EQ(p.warnings()[1].line, 2);
  EXPECT_TRUE(load_exercise_text(text).warnings().empty());  // no media root, no check
}

TEST(LoadExercise, NonTerminationAndRuntimeFailureAreTraceErrors) {
  ExerciseError limit = load_error(doc("evaluation", "i = 0\nwhile i == 0 {\n  i = 0\n}",
                                       "limits:\n  max_steps: 50\n"));
  EXPECT_EQ(limit.kind(), ExerciseErrorKind::Trace);
  EXPECT_EQ(limit.code(), "TraceError");
  EXPECT_EQ(limit.diagnostics()[0].code, "step-limit");

  ExerciseError div = load_error(doc("evaluation", "z = 0\nq = 4 / z"));
  EXPECT_EQ(div.kind(), ExerciseErrorKind::Trace);
  EXPECT_EQ(div.diagnostics()[0].code, "runtime-error");
  EXPECT_EQ(div.diagnostics()[0].line, 2);
}

TEST(LoadExercise, FromFileResolvesMediaBesideTheDocument) {
  TempDir dir;
  std::ofstream(dir.path() / "ex.yaml")
      << doc("demonstration", "x = 1", "media:\n  audio:\n    1: l1.ogg\n");
  EXPECT_EQ(load_exercise(dir.path() / "ex.yaml").warnings().size(), 1u);
  std::ofstream(dir.path() / "l1.ogg") << "OggS";
  EXPECT_TRUE(load_exercise(dir.path() / "ex.yaml").warnings().empty());
  EXPECT_THROW(load_exercise(dir.path() / "absent.yaml"), ExerciseError);
}
