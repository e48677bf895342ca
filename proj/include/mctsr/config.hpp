#pragma once

#include <cstdint>
#include <optional>

namespace mctsr {

// Tunables of one search run. Defaults follow the reference configuration
// (exploration constant 2.8, three initial children, three judge samples).
struct SearchConfig {
  double c = 2.8;
  double epsilon = 1e-6;
  int m_initial = 3;
  int eval_samples = 3;
  std::int64_t max_iterations = 8;
  std::optional<int> max_depth;               // edges from the root; unset = no depth cap
  std::optional<double> quality_threshold;    // stop once best q reaches this
  std::optional<int> stagnation_window;       // stop when best q is flat this long
  std::uint64_t seed = 0;
  // Promotion comparison: >= by default, > when strict.
  bool strict_promotion = false;

  // Throws InvalidArgumentError when a field is out of range.
  void validate() const;
};

}  // namespace mctsr
