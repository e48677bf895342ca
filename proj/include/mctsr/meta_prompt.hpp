#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mctsr/evaluation.hpp"
#include "mctsr/tree.hpp"

namespace mctsr {

enum class PromptSource { Seed, Synthesized };

std::string_view to_string(PromptSource s);
PromptSource prompt_source_from_string(std::string_view s);

struct MetaPromptEntry {
  MetaPromptId id = 0;
  std::string text;
  std::int64_t created_at_iteration = 0;
  PromptSource source = PromptSource::Seed;
  std::optional<FeedbackId> trigger_feedback;
  bool promoted = false;  // true once this prompt has ever been active
};

// One promotion decision, recorded whether or not the candidate won.
struct PromotionEvent {
  std::int64_t iteration = 0;
  MetaPromptId candidate_id = 0;
  double q_new = 0.0;
  double q_root = 0.0;
  bool promoted = false;
};

// The active meta-prompt plus the append-only audit history of every
// candidate and promotion decision. Rejected candidates stay stored.
class MetaPromptState {
 public:
  MetaPromptState() = default;
  explicit MetaPromptState(std::string seed_text);

  static MetaPromptState restore(MetaPromptId active, std::vector<MetaPromptEntry> prompts,
                                 std::vector<PromotionEvent> events);

  MetaPromptId active_id() const { return active_; }
  const std::string& active_text() const { return entry(active_).text; }

  const MetaPromptEntry& entry(MetaPromptId id) const;  // throws NotFoundError
  const std::vector<MetaPromptEntry>& prompts() const { return prompts_; }
  const std::vector<PromotionEvent>& promotions() const { return events_; }

  MetaPromptId add_synthesized(std::string text, std::int64_t iteration,
                               std::optional<FeedbackId> trigger);

  // Makes the candidate active and marks it promoted.
  void promote(MetaPromptId candidate, std::int64_t iteration);

  // Appends the decision to the audit log, promoting when it says so.
  void record_decision(const PromotionEvent& event);

 private:
  std::vector<MetaPromptEntry> prompts_;
  std::vector<PromotionEvent> events_;
  MetaPromptId active_ = 0;
};

// True when the freshly evaluated response is at least as good as the root's
// pre-update value (strictly better in strict mode).
bool should_promote(double q_new, double q_root, bool strict = false);

// Asks the model for a candidate meta-prompt from the active prompt plus the
// critique and suggestions of a recently evaluated initial child. Stores the
// candidate (unpromoted) and returns its id.
MetaPromptId synthesize_candidate(ModelProvider& provider, MetaPromptState& state,
                                  const EvaluationFeedback& feedback,
                                  std::optional<FeedbackId> feedback_id, std::int64_t iteration,
                                  const PromptTemplates& templates);

}  // namespace mctsr
