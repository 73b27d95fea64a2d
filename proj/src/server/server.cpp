#include "line_explorer/server/server.hpp"

#include <httplib.h>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "line_explorer/grading/demo.hpp"
#include "line_explorer/grading/errors.hpp"
#include "line_explorer/grading/ids.hpp"
#include "line_explorer/io/exercise_doc.hpp"
#include "line_explorer/io/json_codec.hpp"
#include "line_explorer/io/submission_store.hpp"
#include "line_explorer/io/sus_store.hpp"
#include "line_explorer/server/api_error.hpp"
#include "line_explorer/server/session_store.hpp"
#include "line_explorer/sus/report.hpp"

namespace line_explorer::server {

namespace fs = std::filesystem;
using io::Json;

namespace {

[[noreturn]] void bad_request(const std::string& message) { throw RequestError("BadRequest", message); }

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json j = Json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) bad_request("request body must be a JSON object");
  return j;
}

const Json& require(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) bad_request(std::string("missing field '") + key + "'");
  return *it;
}

long long require_int(const Json& body, const char* key) {
  const Json& v = require(body, key);
  if (!v.is_number_integer()) bad_request(std::string("'") + key + "' must be an integer");
  return v.get<long long>();
}

std::string require_string(const Json& body, const char* key) {
  const Json& v = require(body, key);
  if (!v.is_string()) bad_request(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

int require_line(const Json& body, const char* key) {
  long long v = require_int(body, key);
  if (v < 1 || v > 1'000'000) bad_request(std::string("'") + key + "' is not a line number");
  return static_cast<int>(v);
}

tracer::IterationVector iteration_field(const Json& body) {
  auto it = body.find("iteration");
  if (it == body.end() || it->is_null()) return {};
  if (!it->is_array()) bad_request("'iteration' must be a list of positive integers");
  tracer::IterationVector out;
  for (const auto& v : *it) {
    if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 1'000'000) {
      bad_request("'iteration' must be a list of positive integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

// Entry text as typed; numbers and booleans are accepted and rendered.
std::string entry_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_number_integer() || v.is_boolean()) return v.dump();
  bad_request("worksheet entries must be strings");
}

std::string url_path(const std::string& rel) {
  static const char* hex = "0123456789ABCDEF";
  std::string out = "/media/";
  for (unsigned char c : rel) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || c == '/') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

Json modes_json(const io::Exercise& ex) {
  Json modes = Json::array();
  for (auto m : ex.modes) modes.push_back(std::string(lang::to_string(m)));
  return modes;
}

// Fields both payloads share; all of them are authored input, none trace-derived.
Json base_payload(const io::PreparedExercise& p, io::ExerciseMode mode) {
  const io::Exercise& ex = p.exercise();
  return Json{{"id", ex.id},
              {"title", ex.title},
              {"mode", std::string(lang::to_string(mode))},
              {"modes", modes_json(ex)},
              {"assumptions", ex.assumptions_text},
              {"source", ex.source.lines()},
              {"executable_lines", lang::executable_lines(p.program())},
              {"columns", p.columns()}};
}

Json demo_payload(const io::PreparedExercise& p) {
  Json out = base_payload(p, io::ExerciseMode::Demonstration);
  out["layout"] = io::to_json(p.layout());
  Json trace = Json::array();
  for (const auto& step : p.trace().steps) trace.push_back(io::to_json(step, p.columns()));
  out["trace"] = std::move(trace);
  Json audio = Json::object();
  for (const auto& [line, ref] : p.exercise().media.audio) {
    audio[std::to_string(line)] = ref ? Json(url_path(*ref)) : Json(nullptr);
  }
  const auto& video = p.exercise().media.video;
  out["media"] = Json{{"video", video ? Json(url_path(*video)) : Json(nullptr)}, {"audio", std::move(audio)}};
  return out;
}

Json rating_rows(const std::vector<sus::CohortMean>& means) {
  Json rows = Json::array();
  for (const auto& m : means) {
    rows.push_back({{"group_key", m.group_key},
                    {"mode", std::string(sus::to_string(m.mode))},
                    {"mean", m.mean},
                    {"mean_1dp", sus::format_mean(m.mean)},
                    {"n", m.n},
                    {"rating", std::string(sus::to_string(sus::classify(m.mean)))}});
  }
  return rows;
}

bool yes_no_field(const Json& r, const char* key) {
  const Json& v = require(r, key);
  if (v.is_boolean()) return v.get<bool>();
  if (v == "yes") return true;
  if (v == "no") return false;
  throw sus::InvalidResponse(std::string(key) + " must be true/false");
}

int likert_field(const Json& r, const char* key) {
  const Json& v = require(r, key);
  if (!v.is_number_integer()) throw sus::InvalidResponse(std::string(key) + " must be an integer 1..5");
  return v.get<int>();
}

sus::SusResponse sus_from_json(const Json& body) {
  sus::SusResponse r;
  const Json& items = require(body, "items");
  if (!items.is_array()) throw sus::InvalidResponse("items must be a list of ten integers");
  for (const auto& v : items) {
    if (!v.is_number_integer()) throw sus::InvalidResponse("items must be integers 1..5");
    long long x = v.get<long long>();
    r.items.push_back(x < 0 || x > 9 ? 0 : static_cast<int>(x));
  }
  auto mode = sus::parse_mode(require_string(body, "mode"));
  if (!mode) throw sus::InvalidResponse("mode must be narrated or evaluation");
  r.mode = *mode;
  const Json& p = require(body, "respondent");
  if (!p.is_object()) throw sus::InvalidResponse("respondent must be an object");
  auto program = sus::parse_program(require_string(p, "program"));
  if (!program) throw sus::InvalidResponse("unknown program");
  r.respondent.academic_program = *program;
  r.respondent.first_course = yes_no_field(p, "first_course");
  const Json& courses = require(p, "completed_courses");
  auto cc = sus::parse_completed_courses(courses.is_string() ? courses.get<std::string>() : courses.dump());
  if (!cc) throw sus::InvalidResponse("completed_courses must be 0, 1, 2, 3 or 4+");
  r.respondent.completed_courses = *cc;
  r.respondent.experience = likert_field(p, "experience");
  r.respondent.comfort = likert_field(p, "comfort");
  r.respondent.attitude = likert_field(p, "attitude");
  r.respondent.course_attitude = likert_field(p, "course_attitude");
  r.respondent.used_internet = yes_no_field(p, "used_internet");
  if (auto it = p.find("resources"); it != p.end()) {
    if (!it->is_array()) throw sus::InvalidResponse("resources must be a list of strings");
    for (const auto& t : *it) {
      if (!t.is_string()) throw sus::InvalidResponse("resources must be a list of strings");
      std::string tag = t.get<std::string>();
      if (tag.find_first_of(";\n\r") != std::string::npos) {
        throw sus::InvalidResponse("resource tags cannot contain ';' or line breaks");
      }
      if (!tag.empty()) r.respondent.resources.push_back(tag);
    }
  }
  if (auto it = p.find("respondent_id"); it != p.end() && !it->is_null()) {
    if (!it->is_string()) throw sus::InvalidResponse("respondent_id must be a string");
    r.respondent.respondent_id = it->get<std::string>();
    if (r.respondent.respondent_id.find_first_of("\n\r") != std::string::npos) {
      throw sus::InvalidResponse("respondent_id cannot contain line breaks");
    }
  }
  sus::validate_response(r);
  return r;
}

std::vector<sus::GroupField> parse_group_by(const std::string& text) {
  std::vector<sus::GroupField> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string name = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    auto f = sus::parse_group_field(name);
    if (!f) bad_request("unknown group_by field '" + name + "'");
    out.push_back(*f);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() > 2 || (out.size() == 2 && out[0] == out[1])) {
    bad_request("group_by takes one or two distinct fields");
  }
  return out;
}

}  // namespace

std::vector<std::string> load_questionnaire(const std::optional<fs::path>& file) {
  if (!file) return sus::default_questionnaire();
  std::ifstream in(*file);
  if (!in) throw StartupError("cannot read questionnaire file " + file->string());
  std::vector<std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) items.push_back(line);
  }
  if (items.size() != 10) {
    throw StartupError("questionnaire file must hold exactly 10 statements, found " +
                       std::to_string(items.size()));
  }
  return items;
}

struct Server::Impl {
  ServerConfig cfg;
  std::ostream* log;
  std::map<std::string, io::ExercisePtr> exercises;
  std::vector<std::string> questionnaire;
  std::unique_ptr<io::SubmissionStore> submissions;
  std::unique_ptr<io::SusStore> sus_store;
  SessionStore sessions;
  httplib::Server http;
  std::thread thread;
  bool bound = false;

  Impl(ServerConfig c, std::ostream* l) : cfg(std::move(c)), log(l), sessions(cfg.session_ttl) {}

  void note(const std::string& line) {
    if (log) *log << line << std::endl;
  }

  void load_exercises() {
    std::error_code ec;
    if (!fs::is_directory(cfg.exercises_dir, ec)) {
      throw StartupError("exercise directory not found: " + cfg.exercises_dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(cfg.exercises_dir)) {
      if (e.path().extension() == ".yaml" || e.path().extension() == ".yml") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    const fs::path media_root = cfg.media_dir.value_or(cfg.exercises_dir);
    for (const auto& f : files) {
      try {
        auto p = std::make_shared<io::PreparedExercise>(io::load_exercise(f, media_root));
        for (const auto& w : p->warnings()) note(f.filename().string() + ": " + lang::format(w));
        if (!exercises.emplace(p->id(), p).second) {
          throw StartupError("duplicate exercise id '" + p->id() + "' in " + f.string());
        }
      } catch (const io::ExerciseError& e) {
        throw StartupError(f.string() + ": " + e.what());
      }
    }
  }

  io::ExercisePtr exercise(const std::string& id) {
    auto it = exercises.find(id);
    if (it == exercises.end()) throw RequestError("NotFound", "no exercise '" + id + "'");
    return it->second;
  }

  static void reply(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void fail(httplib::Response& res, const std::exception& e) {
    ApiError err = to_api_error(e);
    res.status = err.status;
    res.set_content(error_body(err), "application/json");
  }

  template <class F>
  httplib::Server::Handler route(F f) {
    return [this, f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const std::exception& e) {
        fail(res, e);
      }
    };
  }

  Json session_json(const SessionRecord& rec) { return io::session_view(rec.session, rec.revision); }

  void install_routes() {
    http.set_payload_max_length(cfg.max_body_bytes);
    // The library default adds SO_REUSEPORT, which lets a second server bind
    // a port that is already serving.
    http.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
      std::string code = res.status == 413 ? "PayloadTooLarge" : res.status == 404 ? "NotFound" : "BadRequest";
      if (res.status >= 500) code = "Internal";
      res.set_content(error_body({res.status, code, httplib::status_message(res.status)}), "application/json");
      return httplib::Server::HandlerResponse::Handled;
    });
    http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        fail(res, e);
      } catch (...) {
        res.status = 500;
        res.set_content(error_body({500, "Internal", "internal error"}), "application/json");
      }
    });
    if (cfg.access_log && log) {
      http.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
        note(req.method + " " + req.path + " " + std::to_string(res.status));
      });
    }

    http.Get("/api/exercises", route([this](const httplib::Request&, httplib::Response& res) {
      Json list = Json::array();
      for (const auto& [id, p] : exercises) {
        list.push_back({{"id", id}, {"title", p->exercise().title}, {"modes", modes_json(p->exercise())}});
      }
      reply(res, 200, Json{{"exercises", std::move(list)}});
    }));

    http.Get(R"(/api/exercises/([^/]+))", route([this](const httplib::Request& req, httplib::Response& res) {
      auto p = exercise(req.matches[1]);
      if (!req.has_param("mode")) bad_request("query parameter 'mode' is required");
      std::string mode = req.get_param_value("mode");
      if (mode == "demonstration") {
        if (!p->exercise().has_mode(io::ExerciseMode::Demonstration)) {
          throw grading::GradingError("ModeUnavailable", "exercise '" + p->id() + "' has no demonstration mode");
        }
        reply(res, 200, demo_payload(*p));
      } else if (mode == "evaluation") {
        if (!p->exercise().has_mode(io::ExerciseMode::Evaluation)) {
          throw grading::GradingError("ModeUnavailable", "exercise '" + p->id() + "' has no evaluation mode");
        }
        reply(res, 200, base_payload(*p, io::ExerciseMode::Evaluation));
      } else {
        bad_request("mode must be demonstration or evaluation");
      }
    }));

    http.Post(R"(/api/exercises/([^/]+)/check)", route([this](const httplib::Request& req, httplib::Response& res) {
      auto p = exercise(req.matches[1]);
      Json body = parse_body(req);
      auto verdict = grading::check_cell(*p, require_line(body, "line"), iteration_field(body),
                                         require_string(body, "variable"), entry_text(require(body, "entered")));
      reply(res, 200, Json{{"verdict", std::string(grading::to_string(verdict.kind))},
                           {"expected_hidden", verdict.expected_hidden}});
    }));

    http.Post(R"(/api/exercises/([^/]+)/reveal)", route([this](const httplib::Request& req, httplib::Response& res) {
      auto p = exercise(req.matches[1]);
      Json body = parse_body(req);
      int line = require_line(body, "line");
      auto iteration = iteration_field(body);
      Json values = Json::object();
      for (const auto& [var, value] : grading::reveal_cells(*p, line, iteration)) values[var] = io::to_json(value);
      reply(res, 200, Json{{"line", line}, {"iteration", iteration}, {"values", std::move(values)}});
    }));

    http.Post("/api/sessions", route([this](const httplib::Request& req, httplib::Response& res) {
      Json body = parse_body(req);
      auto p = exercise(require_string(body, "exercise_id"));
      auto rec = sessions.create(grading::EvalSession::begin(*p, grading::random_id()));
      reply(res, 201, session_json(rec));
    }));

    http.Get(R"(/api/sessions/([0-9a-f]+))", route([this](const httplib::Request& req, httplib::Response& res) {
      reply(res, 200, session_json(sessions.get(req.matches[1])));
    }));

    http.Get(R"(/api/sessions/([0-9a-f]+)/can-submit)",
             route([this](const httplib::Request& req, httplib::Response& res) {
               auto rec = sessions.get(req.matches[1]);
               reply(res, 200, Json{{"can_submit", rec.session.can_submit()}, {"revision", rec.revision}});
             }));

    http.Post(R"(/api/sessions/([0-9a-f]+)/enter-line)",
              route([this](const httplib::Request& req, httplib::Response& res) {
                Json body = parse_body(req);
                long long revision = require_int(body, "revision");
                const Json& raw = require(body, "entries");
                if (!raw.is_object()) bad_request("'entries' must map variable names to strings");
                grading::EntryRow entries;
                for (const auto& [k, v] : raw.items()) entries[k] = entry_text(v);
                bool exit_loop = false;
                if (auto it = body.find("exit_loop"); it != body.end()) {
                  if (!it->is_boolean()) bad_request("'exit_loop' must be true or false");
                  exit_loop = it->get<bool>();
                }
                auto rec = sessions.mutate(req.matches[1], revision, [&](SessionRecord& r) {
                  r.session = r.session.enter_line(entries, exit_loop);
                });
                reply(res, 200, session_json(rec));
              }));

    http.Post(R"(/api/sessions/([0-9a-f]+)/undo)", route([this](const httplib::Request& req, httplib::Response& res) {
      Json body = parse_body(req);
      auto rec = sessions.mutate(req.matches[1], require_int(body, "revision"),
                                 [](SessionRecord& r) { r.session = r.session.undo(); });
      reply(res, 200, session_json(rec));
    }));

    http.Post(R"(/api/sessions/([0-9a-f]+)/make-loop)",
              route([this](const httplib::Request& req, httplib::Response& res) {
                Json body = parse_body(req);
                int target = require_line(body, "target_line");
                auto rec = sessions.mutate(req.matches[1], require_int(body, "revision"),
                                           [&](SessionRecord& r) { r.session = r.session.make_loop(target); });
                reply(res, 200, session_json(rec));
              }));

    http.Post(R"(/api/sessions/([0-9a-f]+)/submit)", route([this](const httplib::Request& req, httplib::Response& res) {
      Json body = parse_body(req);
      long long revision = require_int(body, "revision");
      std::optional<std::string> respondent;
      if (auto it = body.find("respondent"); it != body.end() && !it->is_null()) {
        if (!it->is_string()) bad_request("'respondent' must be a string");
        respondent = it->get<std::string>();
      }
      std::string receipt;
      grading::SubmissionResult result;
      auto rec = sessions.mutate(req.matches[1], revision, [&](SessionRecord& r) {
        auto p = exercise(r.session.exercise_id());
        grading::Submitted done = grading::submit(r.session, *p);
        io::StoredSubmission sub;
        sub.exercise_id = p->id();
        sub.session_id = done.session.session_id();
        sub.answers = done.session.archived_answers();
        sub.result = done.result;
        sub.started_at = r.created_at;
        sub.submitted_at = io::utc_timestamp();
        sub.respondent = respondent;
        receipt = submissions->store(std::move(sub));
        result = std::move(done.result);
        r.session = std::move(done.session);
      });
      reply(res, 200, Json{{"receipt", receipt}, {"session", session_json(rec)}, {"result", io::to_json(result)}});
    }));

    http.Get("/api/sus/questionnaire", route([this](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, Json{{"format_version", 1},
                           {"scale", {{"min", 1}, {"max", 5}, {"min_label", "Strongly disagree"},
                                      {"max_label", "Strongly agree"}}},
                           {"modes", {"narrated", "evaluation"}},
                           {"items", questionnaire}});
    }));

    http.Post("/api/sus", route([this](const httplib::Request& req, httplib::Response& res) {
      Json body = parse_body(req);
      std::string receipt = sus_store->store(sus_from_json(body));
      reply(res, 201, Json{{"receipt", receipt}});
    }));

    http.Get("/api/sus/report", route([this](const httplib::Request& req, httplib::Response& res) {
      auto group_by = parse_group_by(req.has_param("group_by") ? req.get_param_value("group_by") : "program");
      std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
      auto means = sus::cohort_means(sus_store->load().responses, group_by);
      if (format == "text") {
        res.set_content(sus::render_report_text(means, group_by), "text/plain; charset=utf-8");
      } else if (format == "machine") {
        res.set_content(sus::render_report_machine(means, group_by), "text/csv; charset=utf-8");
      } else if (format == "json") {
        Json fields = Json::array();
        for (auto f : group_by) fields.push_back(std::string(sus::to_string(f)));
        reply(res, 200, Json{{"group_by", std::move(fields)}, {"rows", rating_rows(means)}});
      } else {
        bad_request("format must be json, text or machine");
      }
    }));

    const fs::path media = cfg.media_dir.value_or(cfg.exercises_dir);
    if (!http.set_mount_point("/media", media.string())) note("media directory not mounted: " + media.string());
    bool ui = cfg.ui_dir && http.set_mount_point("/", cfg.ui_dir->string());
    if (cfg.ui_dir && !ui) throw StartupError("UI directory not found: " + cfg.ui_dir->string());
    if (!ui) {
      http.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("line_explorer API server. See /api/exercises.\n", "text/plain; charset=utf-8");
      });
    }
  }
};

Server::Server(ServerConfig config, std::ostream* log) : impl_(std::make_unique<Impl>(std::move(config), log)) {
  impl_->load_exercises();
  impl_->questionnaire = load_questionnaire(impl_->cfg.questionnaire_file);
  try {
    impl_->submissions = std::make_unique<io::SubmissionStore>(impl_->cfg.data_dir);
    impl_->sus_store = std::make_unique<io::SusStore>(impl_->cfg.data_dir);
  } catch (const io::StorageError& e) {
    throw StartupError(e.what());
  }
  impl_->install_routes();
}

Server::~Server() { stop(); }

const ServerConfig& Server::config() const { return impl_->cfg; }

int Server::bind() {
  auto& cfg = impl_->cfg;
  if (cfg.port < 0 || cfg.port > 65535) throw StartupError("port must be 0..65535");
  if (cfg.port == 0) {
    int port = impl_->http.bind_to_any_port(cfg.host);
    if (port <= 0) throw StartupError("cannot bind " + cfg.host);
    cfg.port = port;
  } else if (!impl_->http.bind_to_port(cfg.host, cfg.port)) {
    throw StartupError("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
  }
  impl_->bound = true;
  return cfg.port;
}

void Server::run() {
  if (!impl_->bound) bind();
  impl_->note("listening on http://" + impl_->cfg.host + ":" + std::to_string(impl_->cfg.port) + " with " +
              std::to_string(impl_->exercises.size()) + " exercises");
  impl_->http.listen_after_bind();
}

int Server::start() {
  int port = bind();
  impl_->thread = std::thread([this] { run(); });
  impl_->http.wait_until_ready();
  return port;
}

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace line_explorer::server
