#include "wire.hpp"

#include <httplib.h>

#include <stdexcept>
#include <variant>

#include "replay.hpp"

namespace line_explorer::support {

RecordingClient::RecordingClient(int port) : client_(std::make_unique<httplib::Client>("127.0.0.1", port)) {
  client_->set_connection_timeout(5);
  client_->set_read_timeout(10);
}

RecordingClient::~RecordingClient() = default;

static Exchange& record(std::vector<Exchange>& log, std::string method, const std::string& path,
                        const std::string& body, const httplib::Result& res) {
  if (!res) throw std::runtime_error(method + " " + path + ": " + httplib::to_string(res.error()));
  log.push_back({std::move(method), path, body, res->status, res->body});
  return log.back();
}

Exchange& RecordingClient::get(const std::string& path) { return record(log_, "GET", path, "", client_->Get(path)); }

Exchange& RecordingClient::post(const std::string& path, const Json& body) { return post_raw(path, body.dump()); }

Exchange& RecordingClient::post_raw(const std::string& path, const std::string& body) {
  return record(log_, "POST", path, body, client_->Post(path, body, "application/json"));
}

Json body_json(const Exchange& ex) { return Json::parse(ex.response_body); }

std::set<std::string> truth_renderings(const io::PreparedExercise& exercise) {
  std::set<std::string> out;
  for (const auto& step : exercise.trace().steps) {
    for (const auto& [name, value] : step.env_after) out.insert(value.render());
  }
  return out;
}

bool structural_path(const std::string& path) {
  static const std::set<std::string> keys{"cursor_line",       "iteration_indicator", "revision",
                                          "claimed_iteration", "loop_targets",        "executable_lines",
                                          "ordinal",           "line",                "iteration_claimed",
                                          "target_line"};
  std::size_t start = 0;
  while (start < path.size()) {
    auto slash = path.find('/', start + 1);
    std::string part = path.substr(start + 1, slash == std::string::npos ? std::string::npos : slash - start - 1);
    if (keys.count(part)) return true;
    if (slash == std::string::npos) break;
    start = slash;
  }
  return false;
}

namespace {

const std::set<std::string>& denied_keys() {
  static const std::set<std::string> keys{"trace", "steps", "values", "expected", "env", "env_after",
                                          "layout", "initial_env", "next_line", "truth_line"};
  return keys;
}

void walk(const Json& j, const std::string& path, const std::set<std::string>& truth,
          std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (denied_keys().count(k)) out.push_back(path + "/" + k + "=<trace key>");
      // Row maps are keyed by line number.
      bool line_key = path.ends_with("/open_entries") || path.ends_with("/draft_entries");
      if (truth.count(k) && !line_key) {
        out.push_back(path + "/" + k + "=<key>");
      }
      walk(v, path + "/" + k, truth, out);
    }
    return;
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) walk(j[i], path + "/" + std::to_string(i), truth, out);
    return;
  }
  std::string text = j.is_string() ? j.get<std::string>() : j.dump();
  if (truth.count(text) && !structural_path(path)) out.push_back(path + "=" + text);
}

}  // namespace

std::vector<std::string> leaf_leaks(const std::string& body, const std::set<std::string>& truth) {
  std::vector<std::string> out;
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) {
    if (truth.count(body)) out.push_back("<body>=" + body);
    return out;
  }
  walk(j, "", truth, out);
  return out;
}

WireRun drive_session(RecordingClient& client, const io::PreparedExercise& path_source,
                      const std::string& exercise_id, const std::string& entry, bool probe_errors) {
  // The truth path as session actions, computed locally.
  auto local = replay_truth(path_source, grading::EvalSession::begin(path_source, "local"), truth_rows(path_source));

  auto expect = [](const Exchange& ex, int status) {
    if (ex.status != status) {
      throw std::runtime_error(ex.method + " " + ex.path + " gave " + std::to_string(ex.status) + ", wanted " +
                               std::to_string(status) + ": " + ex.response_body);
    }
    return body_json(ex);
  };

  client.get("/api/exercises/" + exercise_id + "?mode=evaluation");
  Json view = expect(client.post("/api/sessions", Json{{"exercise_id", exercise_id}}), 201);
  WireRun run;
  run.session_id = view["session_id"].get<std::string>();
  run.revision = view["revision"].get<long long>();
  const std::string base = "/api/sessions/" + run.session_id;
  bool at_end = view["cursor_line"].is_null();
  std::vector<std::string> columns = path_source.columns();

  for (const auto& action : local.action_stack()) {
    if (probe_errors) {
      client.get(base);
      client.get(base + "/can-submit");
      Json stale{{"revision", run.revision - 1}, {"entries", Json::object()}};
      expect(client.post(base + "/enter-line", stale), 409);
      if (!columns.empty()) {
        Json partial = Json::object();
        for (std::size_t c = 1; c < columns.size(); ++c) partial[columns[c]] = entry;
        expect(client.post(base + "/enter-line", Json{{"revision", run.revision}, {"entries", partial}}),
               at_end ? 409 : 422);
      }
      expect(client.post(base + "/make-loop", Json{{"revision", run.revision}, {"target_line", 999}}), 422);
      // At END a submit with the live revision would go through.
      if (!at_end) expect(client.post(base + "/submit", Json{{"revision", run.revision}}), 409);
    }
    Json next;
    if (const auto* e = std::get_if<grading::EnterLineAction>(&action)) {
      Json row = Json::object();
      for (const auto& c : columns) row[c] = entry;
      next = expect(client.post(base + "/enter-line",
                                Json{{"revision", run.revision}, {"entries", row}, {"exit_loop", e->exit_loop}}),
                    200);
      if (next["archived_answers"].back()["line"] != e->line) {
        throw std::runtime_error("wire session entered a different line than the local replay");
      }
    } else {
      const auto& m = std::get<grading::MakeLoopAction>(action);
      next = expect(client.post(base + "/make-loop", Json{{"revision", run.revision}, {"target_line", m.target}}),
                    200);
    }
    run.revision = next["revision"].get<long long>();
    if (probe_errors) {
      // Undo and redo, so the undo response is on the wire too.
      Json undone = expect(client.post(base + "/undo", Json{{"revision", run.revision}}), 200);
      run.revision = undone["revision"].get<long long>();
      if (const auto* e = std::get_if<grading::EnterLineAction>(&action)) {
        Json row = Json::object();
        for (const auto& c : columns) row[c] = entry;
        next = expect(client.post(base + "/enter-line", Json{{"revision", run.revision},
                                                             {"entries", row},
                                                             {"exit_loop", e->exit_loop}}),
                      200);
      } else {
        next = expect(client.post(base + "/make-loop",
                                  Json{{"revision", run.revision},
                                       {"target_line", std::get<grading::MakeLoopAction>(action).target}}),
                      200);
      }
      run.revision = next["revision"].get<long long>();
    }
    at_end = next["cursor_line"].is_null();
  }
  client.get(base + "/can-submit");
  client.get(base);
  run.exchanges_before_submit = client.log().size();
  return run;
}

}  // namespace line_explorer::support
