#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mctsr/trace.hpp"

namespace mctsr {

struct ReplayReport {
  bool verified = false;
  std::optional<std::int64_t> divergence_iteration;
  std::string detail;  // empty when verified
};

// Recomputes every aggregation, Q update, UCT value, selection argmax, and
// promotion decision from the inputs recorded in the trace, tracking node
// q/visits and tree shape independently. When a snapshot is given, the final
// tracked state must match it node for node. Reports the first divergence.
ReplayReport verify_trace(const std::vector<TraceEvent>& events,
                          const nlohmann::json* snapshot = nullptr);

}  // namespace mctsr
