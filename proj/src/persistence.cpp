#include "mctsr/persistence.hpp"

#include <unistd.h>

#include <fstream>

#include "mctsr/errors.hpp"

namespace mctsr {

namespace fs = std::filesystem;
using nlohmann::json;

void atomic_write_file(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);

  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("rename failed for " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

void save_json(const fs::path& path, const json& doc) {
  atomic_write_file(path, doc.dump(2) + "\n");
}

json load_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

fs::path make_run_dir(const fs::path& base, std::string_view query, Clock& clock) {
  const std::string name = utc_stamp(clock.now_ms()) + "-" + short_hash(fnv1a64(query));
  fs::path dir = base / name;
  for (int suffix = 2; fs::exists(dir); ++suffix)
    dir = base / (name + "-" + std::to_string(suffix));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create run directory " + dir.string() + ": " + ec.message());
  return dir;
}

}  // namespace mctsr
