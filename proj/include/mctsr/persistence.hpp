#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

#include "mctsr/util.hpp"

namespace mctsr {

// Write-temp-then-rename; a killed process never leaves a truncated file
// under the final name.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

void save_json(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json load_json(const std::filesystem::path& path);

// Creates <base>/<utc-stamp>-<query-hash>/ (suffixed -2, -3, ... when taken).
std::filesystem::path make_run_dir(const std::filesystem::path& base, std::string_view query,
                                   Clock& clock);

}  // namespace mctsr
