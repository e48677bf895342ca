#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace mctsr::cli {

// Exit codes: 0 success, 1 partial failure or divergence, 2 unusable
// config/input. The command functions are the CLI; main() only parses flags.

struct RunOptions {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> provider;  // "http" | "scripted"
};
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

struct ReplayOptions {
  std::string path;  // run directory or trace file
};
int cmd_replay(const ReplayOptions& options, std::ostream& out, std::ostream& err);

struct EvalOptions {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> category;
  std::optional<std::string> provider;
};
int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);

struct ExportOptions {
  std::string input_path;  // run directory, tree snapshot, or transcripts file
  std::string format;      // "sft" | "preference"
  std::string out_path;
};
int cmd_export(const ExportOptions& options, std::ostream& out, std::ostream& err);

}  // namespace mctsr::cli
