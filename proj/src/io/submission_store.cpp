#include "line_explorer/io/submission_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

#include "line_explorer/grading/ids.hpp"
#include "line_explorer/io/json_codec.hpp"

namespace line_explorer::io {

namespace {

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw StorageError("cannot create data directory " + dir.string() + ": " + ec.message());
}

}  // namespace

void append_line(const std::filesystem::path& path, const std::string& line, const std::string& first_line) {
  int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw StorageError("cannot open " + path.string() + ": " + std::strerror(errno));
  std::string data;
  if (!first_line.empty() && ::lseek(fd, 0, SEEK_END) == 0) data = first_line + "\n";
  data += line + "\n";
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    ssize_t n = ::write(fd, p, left);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      int err = errno;
      ::close(fd);
      throw StorageError("cannot write " + path.string() + ": " + std::strerror(err));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    int err = errno;
    ::close(fd);
    throw StorageError("cannot sync " + path.string() + ": " + std::strerror(err));
  }
  ::close(fd);
}

SubmissionStore::SubmissionStore(std::filesystem::path data_dir) : log_(data_dir / "submissions.ndjson") {
  ensure_dir(data_dir);
}

std::string SubmissionStore::store(StoredSubmission submission) {
  submission.receipt_id = grading::random_id();
  std::string line = to_json(submission).dump();
  std::lock_guard lock(write_mutex_);
  append_line(log_, line);
  return submission.receipt_id;
}

std::vector<StoredSubmission> SubmissionStore::list_all() const {
  std::vector<StoredSubmission> out;
  std::ifstream in(log_, std::ios::binary);
  if (!in) return out;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) break;  // a write in progress
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw StorageError(log_.string() + ":" + std::to_string(line_no) + ": not a JSON record");
    }
    out.push_back(stored_submission_from_json(j));
  }
  return out;
}

std::vector<StoredSubmission> SubmissionStore::list(std::string_view exercise_id) const {
  auto all = list_all();
  std::vector<StoredSubmission> out;
  for (auto& s : all) {
    if (s.exercise_id == exercise_id) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace line_explorer::io
