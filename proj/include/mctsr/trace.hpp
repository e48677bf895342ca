#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string_view>
#include <vector>

#include "mctsr/tree.hpp"

namespace mctsr {

enum class TraceAction { Init, Select, Regenerate, Refine, Evaluate, Backprop, Promote, Terminate };

std::string_view to_string(TraceAction a);
TraceAction trace_action_from_string(std::string_view s);

// One line of the run's append-only JSONL trace. `data` carries the recorded
// inputs the replay verifier needs to recompute the step independently.
struct TraceEvent {
  std::int64_t iteration = 0;
  TraceAction action = TraceAction::Init;
  std::vector<NodeId> nodes;
  nlohmann::json data = nlohmann::json::object();
  std::int64_t ts_ms = 0;
  int attempts = 0;
};

nlohmann::json trace_event_to_json(const TraceEvent& event);
TraceEvent trace_event_from_json(const nlohmann::json& doc);

class TraceWriter {
 public:
  virtual ~TraceWriter() = default;
  virtual void write(const TraceEvent& event) = 0;
};

class MemoryTrace final : public TraceWriter {
 public:
  void write(const TraceEvent& event) override { events_.push_back(event); }
  const std::vector<TraceEvent>& events() const { return events_; }

 private:
  std::vector<TraceEvent> events_;
};

// Appends one JSON line per event and flushes immediately, so a run aborted
// by a provider failure still leaves a usable partial trace.
class FileTrace final : public TraceWriter {
 public:
  explicit FileTrace(const std::filesystem::path& path);
  void write(const TraceEvent& event) override;

 private:
  std::ofstream out_;
};

// Throws ParseError on malformed lines, IoError when the file is unreadable.
std::vector<TraceEvent> read_trace(const std::filesystem::path& path);

}  // namespace mctsr
