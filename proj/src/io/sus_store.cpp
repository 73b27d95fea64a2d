#include "line_explorer/io/sus_store.hpp"

#include <fstream>
#include <sstream>

#include "line_explorer/grading/ids.hpp"
#include "line_explorer/io/submission_record.hpp"
#include "line_explorer/io/submission_store.hpp"

namespace line_explorer::io {

SusStore::SusStore(std::filesystem::path data_dir) : path_(data_dir / "sus_responses.csv") {
  std::error_code ec;
  std::filesystem::create_directories(data_dir, ec);
  if (ec) throw StorageError("cannot create data directory " + data_dir.string() + ": " + ec.message());
}

std::string SusStore::store(const sus::SusResponse& response) {
  sus::validate_response(response);
  std::string receipt = grading::random_id();
  std::string header = sus::write_sus_csv({});
  header.pop_back();
  std::lock_guard lock(mutex_);
  append_line(path_, "# receipt=" + receipt + "\n" + sus::sus_csv_row(response), header);
  return receipt;
}

sus::SusCsv SusStore::load() const {
  std::lock_guard lock(mutex_);
  std::ifstream in(path_, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return sus::parse_sus_csv(buf.str());
}

}  // namespace line_explorer::io
