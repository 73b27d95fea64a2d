#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "line_explorer/io/exercise.hpp"

namespace httplib {
class Client;
}

namespace line_explorer::support {

using Json = nlohmann::ordered_json;

struct Exchange {
  std::string method;
  std::string path;
  std::string request_body;
  int status = 0;
  std::string response_body;
};

// HTTP client that keeps the raw bytes of every exchange.
class RecordingClient {
 public:
  explicit RecordingClient(int port);
  ~RecordingClient();

  Exchange& get(const std::string& path);
  Exchange& post(const std::string& path, const Json& body);
  Exchange& post_raw(const std::string& path, const std::string& body);

  const std::vector<Exchange>& log() const { return log_; }
  void clear() { log_.clear(); }

 private:
  std::unique_ptr<httplib::Client> client_;
  std::vector<Exchange> log_;
};

Json body_json(const Exchange& ex);

// Rendering of every non-blank truth cell of the exercise.
std::set<std::string> truth_renderings(const io::PreparedExercise& exercise);

// JSON paths whose value may coincide with a value rendering without coming
// from the trace: positions, counters and line numbers the student already has.
bool structural_path(const std::string& path);

/// Scans one response body. A leaf leaks when its whole rendering (string
/// content, or the number as text) is a truth rendering and its path is not
/// structural, or its key names trace data (trace, steps, values, expected,
/// env, layout). Returns "path=value" per finding; non-JSON bodies are
/// checked as a single leaf.
std::vector<std::string> leaf_leaks(const std::string& body, const std::set<std::string>& truth);

struct WireRun {
  std::string session_id;
  long long revision = 0;
  std::size_t exchanges_before_submit = 0;
};

/// Plays a full evaluation session over HTTP: the action sequence that
/// follows the truth's line path (make-loop back, exit past loops), with
/// `entry` typed in every cell. With `probe_errors`, each step also sends a
/// stale revision, a row with a column missing, a bad make-loop target and
/// the GET endpoints. Stops before submit.
WireRun drive_session(RecordingClient& client, const io::PreparedExercise& path_source,
                      const std::string& exercise_id, const std::string& entry, bool probe_errors);

}  // namespace line_explorer::support
