#include "mctsr/trace.hpp"

#include "mctsr/errors.hpp"

namespace mctsr {

using nlohmann::json;

std::string_view to_string(TraceAction a) {
  switch (a) {
    case TraceAction::Init: return "init";
    case TraceAction::Select: return "select";
    case TraceAction::Regenerate: return "regenerate";
    case TraceAction::Refine: return "refine";
    case TraceAction::Evaluate: return "evaluate";
    case TraceAction::Backprop: return "backprop";
    case TraceAction::Promote: return "promote";
    case TraceAction::Terminate: return "terminate";
  }
  return "init";
}

TraceAction trace_action_from_string(std::string_view s) {
  if (s == "init") return TraceAction::Init;
  if (s == "select") return TraceAction::Select;
  if (s == "regenerate") return TraceAction::Regenerate;
  if (s == "refine") return TraceAction::Refine;
  if (s == "evaluate") return TraceAction::Evaluate;
  if (s == "backprop") return TraceAction::Backprop;
  if (s == "promote") return TraceAction::Promote;
  if (s == "terminate") return TraceAction::Terminate;
  throw ParseError("unknown trace action: " + std::string(s));
}

json trace_event_to_json(const TraceEvent& event) {
  json doc;
  doc["v"] = 1;
  doc["iteration"] = event.iteration;
  doc["action"] = std::string(to_string(event.action));
  doc["nodes"] = event.nodes;
  doc["data"] = event.data;
  doc["ts"] = event.ts_ms;
  doc["attempts"] = event.attempts;
  return doc;
}

TraceEvent trace_event_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("trace event is not a JSON object");
  try {
    TraceEvent event;
    event.iteration = doc.at("iteration").get<std::int64_t>();
    event.action = trace_action_from_string(doc.at("action").get<std::string>());
    event.nodes = doc.at("nodes").get<std::vector<NodeId>>();
    event.data = doc.at("data");
    event.ts_ms = doc.at("ts").get<std::int64_t>();
    event.attempts = doc.at("attempts").get<int>();
    return event;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed trace event: ") + e.what());
  }
}

FileTrace::FileTrace(const std::filesystem::path& path) : out_(path, std::ios::app) {
  if (!out_) throw IoError("cannot open trace file " + path.string());
}

void FileTrace::write(const TraceEvent& event) {
  out_ << trace_event_to_json(event).dump() << '\n';
  out_.flush();
  if (!out_) throw IoError("trace write failed");
}

std::vector<TraceEvent> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file " + path.string());
  std::vector<TraceEvent> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
    events.push_back(trace_event_from_json(doc));
  }
  return events;
}

}  // namespace mctsr
