#include "mctsr/meta_prompt.hpp"

#include "mctsr/errors.hpp"
#include "mctsr/prompts.hpp"
#include "mctsr/util.hpp"

namespace mctsr {

std::string_view to_string(PromptSource s) {
  return s == PromptSource::Seed ? "seed" : "synthesized";
}

PromptSource prompt_source_from_string(std::string_view s) {
  if (s == "seed") return PromptSource::Seed;
  if (s == "synthesized") return PromptSource::Synthesized;
  throw ParseError("unknown prompt source: " + std::string(s));
}

MetaPromptState::MetaPromptState(std::string seed_text) {
  MetaPromptEntry seed;
  seed.id = 0;
  seed.text = std::move(seed_text);
  seed.source = PromptSource::Seed;
  seed.promoted = true;  // the seed starts active
  prompts_.push_back(std::move(seed));
  active_ = 0;
}

MetaPromptState MetaPromptState::restore(MetaPromptId active,
                                         std::vector<MetaPromptEntry> prompts,
                                         std::vector<PromotionEvent> events) {
  MetaPromptState state;
  state.prompts_ = std::move(prompts);
  state.events_ = std::move(events);
  state.active_ = active;
  if (state.prompts_.empty() || state.prompts_.front().id != 0)
    throw InvalidStateError("meta prompts: seed entry with id 0 missing");
  state.entry(active);
  return state;
}

const MetaPromptEntry& MetaPromptState::entry(MetaPromptId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= prompts_.size())
    throw NotFoundError("no meta-prompt with id " + std::to_string(id));
  return prompts_[static_cast<std::size_t>(id)];
}

MetaPromptId MetaPromptState::add_synthesized(std::string text, std::int64_t iteration,
                                              std::optional<FeedbackId> trigger) {
  MetaPromptEntry entry;
  entry.id = static_cast<MetaPromptId>(prompts_.size());
  entry.text = std::move(text);
  entry.created_at_iteration = iteration;
  entry.source = PromptSource::Synthesized;
  entry.trigger_feedback = trigger;
  prompts_.push_back(std::move(entry));
  return prompts_.back().id;
}

void MetaPromptState::promote(MetaPromptId candidate, std::int64_t iteration) {
  (void)iteration;
  if (candidate < 0 || static_cast<std::size_t>(candidate) >= prompts_.size())
    throw NotFoundError("promote: no meta-prompt with id " + std::to_string(candidate));
  active_ = candidate;
  prompts_[static_cast<std::size_t>(candidate)].promoted = true;
}

void MetaPromptState::record_decision(const PromotionEvent& event) {
  entry(event.candidate_id);
  events_.push_back(event);
  if (event.promoted) promote(event.candidate_id, event.iteration);
}

bool should_promote(double q_new, double q_root, bool strict) {
  return strict ? q_new > q_root : q_new >= q_root;
}

MetaPromptId synthesize_candidate(ModelProvider& provider, MetaPromptState& state,
                                  const EvaluationFeedback& feedback,
                                  std::optional<FeedbackId> feedback_id, std::int64_t iteration,
                                  const PromptTemplates& templates) {
  std::string suggestions;
  for (const auto& s : feedback.suggestions) {
    suggestions += "- ";
    suggestions += s;
    suggestions += '\n';
  }
  std::vector<ChatMessage> messages;
  messages.push_back({Role::System, templates.synthesize_system});
  messages.push_back({Role::User, render_template(templates.synthesize_user,
                                                  {{"current_prompt", state.active_text()},
                                                   {"critique", feedback.critique},
                                                   {"suggestions", suggestions}})});
  const std::string text = provider.complete(messages, RequestKind::Synthesize);
  if (trim(text).empty())
    throw SynthesisFailedError("meta-prompt synthesis returned empty text");
  return state.add_synthesized(text, iteration, feedback_id);
}

}  // namespace mctsr
