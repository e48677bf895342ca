#include "mctsr/config.hpp"

#include "mctsr/errors.hpp"

namespace mctsr {

void SearchConfig::validate() const {
  if (!(c > 0.0)) throw InvalidArgumentError("SearchConfig: c must be > 0");
  if (!(epsilon > 0.0)) throw InvalidArgumentError("SearchConfig: epsilon must be > 0");
  if (m_initial < 1) throw InvalidArgumentError("SearchConfig: m_initial must be >= 1");
  if (eval_samples < 1) throw InvalidArgumentError("SearchConfig: eval_samples must be >= 1");
  if (max_iterations < 1) throw InvalidArgumentError("SearchConfig: max_iterations must be >= 1");
  if (max_depth && *max_depth < 1) throw InvalidArgumentError("SearchConfig: max_depth must be >= 1");
  if (quality_threshold && !(*quality_threshold >= 0.0 && *quality_threshold <= 10.0))
    throw InvalidArgumentError("SearchConfig: quality_threshold must be in [0,10]");
  if (stagnation_window && *stagnation_window < 1)
    throw InvalidArgumentError("SearchConfig: stagnation_window must be >= 1");
}

}  // namespace mctsr
