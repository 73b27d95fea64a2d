#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "line_explorer/grading/eval_session.hpp"

namespace line_explorer::server {

struct SessionRecord {
  grading::EvalSession session;
  long long revision = 0;  // bumped by every committed mutation
  std::string created_at;
  std::string updated_at;
};

/// In-memory evaluation sessions keyed by session id. Each session has its own
/// lock, so a mutation is an atomic read-modify-write; distinct sessions never
/// wait on each other. Sessions idle for longer than `ttl` are dropped.
class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionStore(std::chrono::seconds ttl = std::chrono::hours(24),
                        std::function<Clock::time_point()> now = Clock::now);

  SessionRecord create(grading::EvalSession session);

  // Throws RequestError NotFound.
  SessionRecord get(const std::string& id);

  /// Runs `fn` on a copy of the record under the session's lock and commits
  /// the copy (revision + 1) if `fn` returns normally. A mismatching
  /// `expected_revision` throws RequestError Conflict without calling `fn`.
  SessionRecord mutate(const std::string& id, long long expected_revision,
                       const std::function<void(SessionRecord&)>& fn);

  std::size_t purge_expired();
  std::size_t size();

 private:
  struct Entry {
    explicit Entry(SessionRecord r) : record(std::move(r)) {}
    std::mutex mutex;
    SessionRecord record;
    Clock::time_point last_used;
  };

  std::shared_ptr<Entry> find(const std::string& id);

  std::chrono::seconds ttl_;
  std::function<Clock::time_point()> now_;
  std::mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
};

}  // namespace line_explorer::server
