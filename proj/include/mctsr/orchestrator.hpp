#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mctsr/config.hpp"
#include "mctsr/evaluation.hpp"
#include "mctsr/meta_prompt.hpp"
#include "mctsr/prompts.hpp"
#include "mctsr/provider.hpp"
#include "mctsr/trace.hpp"
#include "mctsr/tree.hpp"
#include "mctsr/util.hpp"

namespace mctsr {

enum class TerminationReason { Budget, Depth, QualityThreshold, Stagnation };

std::string_view to_string(TerminationReason r);
TerminationReason termination_reason_from_string(std::string_view s);

// Everything a search borrows from its surroundings. One env serves one run.
struct SearchEnv {
  ModelProvider& provider;
  Constitution constitution = default_constitution();
  PromptTemplates templates = PromptTemplates::defaults();
  TraceWriter* trace = nullptr;  // optional
  Clock* clock = nullptr;        // optional; logical time when absent
};

// Whole mutable state of one search. Owned by a single task.
struct SearchState {
  SearchTree tree;
  MetaPromptState meta;
  std::vector<EvaluationFeedback> feedbacks;  // FeedbackId = index
  SearchConfig config;
  SearchEnv* env = nullptr;

  // Most recently evaluated initial child's feedback, the synthesis input.
  std::optional<FeedbackId> last_initial_feedback;
  // Candidate synthesized for the regeneration currently in flight.
  std::optional<MetaPromptId> pending_candidate;

  std::int64_t failed_iterations = 0;
  // best_q_history[t] = best answer q after t cycles; [0] is right after
  // initialization. Drives the stagnation check.
  std::vector<double> best_q_history;

  double best_q() const { return best_q_history.back(); }
};

enum class CycleAction { Regenerate, Refine };

// Summary of one completed cycle, as returned by run_iteration.
struct IterationEvent {
  std::int64_t iteration = 0;
  CycleAction action = CycleAction::Refine;
  NodeId selected = 0;
  NodeId created = 0;
  bool failed = false;
  std::optional<double> q_new;
  std::optional<MetaPromptId> candidate;
  std::optional<bool> promoted;
};

struct SearchOutcome {
  NodeId best_node = 0;
  double best_q = 0.0;
  TerminationReason termination = TerminationReason::Budget;
  std::int64_t iterations_run = 0;
  SearchTree tree;
  MetaPromptState meta;
  std::vector<EvaluationFeedback> feedbacks;
  std::vector<double> best_q_history;
};

// Builds the tree, generates m_initial children under the seed prompt, and
// evaluates them in creation order (backpropagating after each) so the first
// selection is well defined. Errors discard the state.
SearchState initialize(SearchEnv& env, std::string query, std::string m0_text,
                       const SearchConfig& config);

// One full cycle: select, act (refine or regenerate), evaluate, backprop,
// and — on regeneration — the promotion decision. A cycle whose evaluation
// fails leaves every q untouched and is recorded as failed.
IterationEvent run_iteration(SearchState& state);

// Synthesizes a candidate prompt from the freshest initial-child feedback,
// generates a new initial response under it, and adds it under the root.
NodeId regenerate(SearchState& state);

// Produces an improved child of `node` from its content, its stored
// feedback, and the active meta-prompt.
NodeId refine(SearchState& state, NodeId node);

// First matching reason in the fixed order budget, depth, quality threshold,
// stagnation; absent while the search should continue.
std::optional<TerminationReason> check_termination(const SearchState& state);

SearchOutcome run_search(SearchEnv& env, std::string query, std::string m0_text,
                         const SearchConfig& config);

}  // namespace mctsr
