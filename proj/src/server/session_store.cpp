#include "line_explorer/server/session_store.hpp"

#include "line_explorer/io/submission_record.hpp"
#include "line_explorer/server/api_error.hpp"

namespace line_explorer::server {

SessionStore::SessionStore(std::chrono::seconds ttl, std::function<Clock::time_point()> now)
    : ttl_(ttl), now_(std::move(now)) {}

SessionRecord SessionStore::create(grading::EvalSession session) {
  purge_expired();
  std::string stamp = io::utc_timestamp();
  auto entry = std::make_shared<Entry>(SessionRecord{std::move(session), 1, stamp, stamp});
  entry->last_used = now_();
  std::lock_guard lock(map_mutex_);
  if (!entries_.emplace(entry->record.session.session_id(), entry).second) {
    throw RequestError("Conflict", "session id already in use");
  }
  return entry->record;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) {
  std::lock_guard lock(map_mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) throw RequestError("NotFound", "no session '" + id + "'");
  return it->second;
}

SessionRecord SessionStore::get(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  if (now_() - entry->last_used > ttl_) throw RequestError("NotFound", "session '" + id + "' expired");
  entry->last_used = now_();
  return entry->record;
}

SessionRecord SessionStore::mutate(const std::string& id, long long expected_revision,
                                   const std::function<void(SessionRecord&)>& fn) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  if (now_() - entry->last_used > ttl_) throw RequestError("NotFound", "session '" + id + "' expired");
  if (expected_revision != entry->record.revision) {
    throw RequestError("Conflict", "session changed (revision " + std::to_string(entry->record.revision) +
                                       ", request was based on " + std::to_string(expected_revision) + ")");
  }
  SessionRecord next = entry->record;
  fn(next);
  next.revision = entry->record.revision + 1;
  next.updated_at = io::utc_timestamp();
  entry->record = std::move(next);
  entry->last_used = now_();
  return entry->record;
}

std::size_t SessionStore::purge_expired() {
  std::lock_guard lock(map_mutex_);
  std::size_t removed = 0;
  const auto now = now_();
  for (auto it = entries_.begin(); it != entries_.end();) {
    bool expired;
    {
      std::lock_guard entry_lock(it->second->mutex);
      expired = now - it->second->last_used > ttl_;
    }
    if (expired) {
      it = entries_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::size_t SessionStore::size() {
  std::lock_guard lock(map_mutex_);
  return entries_.size();
}

}  // namespace line_explorer::server
