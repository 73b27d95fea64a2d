#include "line_explorer/io/exercise_doc.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "line_explorer/lang/lexer.hpp"

namespace line_explorer::io {

namespace {

[[noreturn]] void schema(const std::string& message, const YAML::Node* at = nullptr) {
  std::string where;
  if (at && at->Mark().line >= 0) where = "line " + std::to_string(at->Mark().line + 1) + ": ";
  throw ExerciseError(ExerciseErrorKind::Schema, where + message);
}

std::string scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) schema(what + " must be a scalar", &node);
  return node.Scalar();
}

long long integer(const YAML::Node& node, const std::string& what) {
  auto value = lang::parse_value_literal(scalar(node, what));
  if (!value || !value->is_int()) schema(what + " must be an integer", &node);
  return value->as_int();
}

void only_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
               const std::string& what) {
  if (!map.IsMap()) schema(what + " must be a mapping", &map);
  for (const auto& kv : map) {
    std::string key = scalar(kv.first, "key in " + what);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema("unknown key '" + key + "' in " + what, &kv.first);
    }
  }
}

std::string strip_trailing_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

ExerciseMode parse_mode(const YAML::Node& node) {
  std::string text = scalar(node, "mode");
  if (text == "demonstration") return ExerciseMode::Demonstration;
  if (text == "evaluation") return ExerciseMode::Evaluation;
  schema("unknown mode '" + text + "' (expected demonstration or evaluation)", &node);
}

MediaRefs parse_media(const YAML::Node& node) {
  only_keys(node, {"video", "audio"}, "media");
  MediaRefs media;
  if (node["video"]) {
    std::string v = scalar(node["video"], "media.video");
    if (v != "none") media.video = v;
  }
  if (const auto audio = node["audio"]) {
    if (!audio.IsMap()) schema("media.audio must map line numbers to paths", &audio);
    for (const auto& kv : audio) {
      long long line = integer(kv.first, "audio line number");
      if (line < 1) schema("audio line numbers start at 1", &kv.first);
      std::string ref = scalar(kv.second, "audio path");
      if (!media.audio.emplace(static_cast<int>(line), ref == "none" ? std::nullopt
                                                                    : std::optional<std::string>(ref))
               .second) {
        schema("duplicate audio entry for line " + std::to_string(line), &kv.first);
      }
    }
  }
  return media;
}

// Paths that are valid YAML block content and survive a literal-block round trip.
bool literal_safe(const std::string& text) {
  if (text.empty() || text.front() == ' ' || text.front() == '\t' || text.front() == '\n') return false;
  for (char c : text) {
    if (c == '\r' || (static_cast<unsigned char>(c) < 0x20 && c != '\n' && c != '\t')) return false;
  }
  return text.size() < 2 || text.substr(text.size() - 2) != "\n\n";
}

void emit_block(YAML::Emitter& out, const std::string& text) {
  if (literal_safe(text)) {
    out << YAML::Literal << text;
  } else {
    out << YAML::DoubleQuoted << text;
  }
}

}  // namespace

Exercise parse_exercise_document(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ExerciseError(ExerciseErrorKind::Schema,
                        "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) schema("exercise document must be a mapping");
  only_keys(root,
            {"format_version", "id", "title", "modes", "assumptions", "initial_env", "limits",
             "media", "source"},
            "exercise document");
  for (const char* required : {"format_version", "id", "title", "modes", "source"}) {
    if (!root[required]) schema(std::string("missing required key '") + required + "'");
  }
  if (integer(root["format_version"], "format_version") != kExerciseFormatVersion) {
    schema("unsupported format_version (this build reads version " +
               std::to_string(kExerciseFormatVersion) + ")",
           &root);
  }

  Exercise ex;
  ex.id = scalar(root["id"], "id");
  ex.title = scalar(root["title"], "title");
  if (root["assumptions"]) {
    ex.assumptions_text = strip_trailing_newlines(scalar(root["assumptions"], "assumptions"));
  }

  const auto modes = root["modes"];
  if (!modes.IsSequence()) schema("modes must be a list", &modes);
  for (const auto& m : modes) {
    if (!ex.modes.insert(parse_mode(m)).second) schema("mode listed twice", &m);
  }

  if (const auto env = root["initial_env"]) {
    if (!env.IsMap() && !env.IsNull()) schema("initial_env must be a mapping", &env);
    for (const auto& kv : env) {
      std::string name = scalar(kv.first, "initial_env name");
      if (!lang::is_identifier(name)) schema("'" + name + "' is not a valid variable name", &kv.first);
      auto value = lang::parse_value_literal(scalar(kv.second, "initial_env value"));
      if (!value) schema("initial value of '" + name + "' must be an integer or true/false", &kv.second);
      if (!ex.initial_env.emplace(name, *value).second) schema("duplicate variable '" + name + "'", &kv.first);
    }
  }

  if (const auto limits = root["limits"]) {
    only_keys(limits, {"max_steps"}, "limits");
    if (limits["max_steps"]) {
      long long n = integer(limits["max_steps"], "limits.max_steps");
      if (n < 1 || n > 10'000'000) schema("limits.max_steps must be in 1..10000000", &limits);
      ex.limits.max_steps = static_cast<int>(n);
    }
  }

  if (const auto media = root["media"]) ex.media = parse_media(media);

  ex.source = lang::SourceProgram(scalar(root["source"], "source"));
  return ex;
}

std::string write_exercise_document(const Exercise& ex) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "format_version" << YAML::Value << kExerciseFormatVersion;
  out << YAML::Key << "id" << YAML::Value << ex.id;
  out << YAML::Key << "title" << YAML::Value << ex.title;
  out << YAML::Key << "modes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (ExerciseMode m : ex.modes) out << std::string(lang::to_string(m));
  out << YAML::EndSeq;
  if (!ex.assumptions_text.empty()) {
    out << YAML::Key << "assumptions" << YAML::Value;
    emit_block(out, ex.assumptions_text + "\n");
  }
  if (!ex.initial_env.empty()) {
    out << YAML::Key << "initial_env" << YAML::Value << YAML::BeginMap;
    for (const auto& [name, value] : ex.initial_env) out << YAML::Key << name << YAML::Value << value.render();
    out << YAML::EndMap;
  }
  out << YAML::Key << "limits" << YAML::Value << YAML::BeginMap << YAML::Key << "max_steps"
      << YAML::Value << ex.limits.max_steps << YAML::EndMap;
  if (ex.media.video || !ex.media.audio.empty()) {
    out << YAML::Key << "media" << YAML::Value << YAML::BeginMap;
    if (ex.media.video) out << YAML::Key << "video" << YAML::Value << *ex.media.video;
    if (!ex.media.audio.empty()) {
      out << YAML::Key << "audio" << YAML::Value << YAML::BeginMap;
      for (const auto& [line, ref] : ex.media.audio) {
        out << YAML::Key << line << YAML::Value << (ref ? *ref : std::string("none"));
      }
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  std::string source;
  for (const auto& l : ex.source.lines()) source += l + "\n";
  out << YAML::Key << "source" << YAML::Value;
  emit_block(out, source);
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

PreparedExercise load_exercise_text(std::string_view text,
                                    const std::optional<std::filesystem::path>& media_root) {
  return PreparedExercise::prepare(parse_exercise_document(text), media_root);
}

PreparedExercise load_exercise(const std::filesystem::path& path,
                               const std::optional<std::filesystem::path>& media_root) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExerciseError(ExerciseErrorKind::Schema, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_exercise_text(buf.str(), media_root ? media_root : path.parent_path());
}

}  // namespace line_explorer::io
