#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace line_explorer::server {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path exercises_dir = "exercises";
  std::filesystem::path data_dir = "data";
  std::optional<std::filesystem::path> media_dir;  // defaults to exercises_dir
  std::optional<std::filesystem::path> ui_dir;
  std::optional<std::filesystem::path> questionnaire_file;  // ten lines
  std::chrono::seconds session_ttl = std::chrono::hours(24);
  std::size_t max_body_bytes = 64 * 1024;
  bool access_log = true;
};

class StartupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ten questionnaire statements from `file`, one per non-blank line, or the
// default wording. Throws StartupError when the file is unreadable or does
// not hold exactly ten statements.
std::vector<std::string> load_questionnaire(const std::optional<std::filesystem::path>& file);

/// The HTTP service. Construction loads every exercise and opens the stores,
/// throwing StartupError on bad configuration.
class Server {
 public:
  explicit Server(ServerConfig config, std::ostream* log = nullptr);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds the socket; returns the bound port. Throws StartupError.
  int bind();
  // Serves until stop(). Call bind() first.
  void run();
  // bind() and run() on a background thread; returns the port.
  int start();
  void stop();

  const ServerConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace line_explorer::server
