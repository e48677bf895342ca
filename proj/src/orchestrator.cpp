#include "mctsr/orchestrator.hpp"

#include <algorithm>

#include "mctsr/errors.hpp"

namespace mctsr {

using nlohmann::json;

std::string_view to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::Budget: return "budget";
    case TerminationReason::Depth: return "depth";
    case TerminationReason::QualityThreshold: return "quality_threshold";
    case TerminationReason::Stagnation: return "stagnation";
  }
  return "budget";
}

TerminationReason termination_reason_from_string(std::string_view s) {
  if (s == "budget") return TerminationReason::Budget;
  if (s == "depth") return TerminationReason::Depth;
  if (s == "quality_threshold") return TerminationReason::QualityThreshold;
  if (s == "stagnation") return TerminationReason::Stagnation;
  throw ParseError("unknown termination reason: " + std::string(s));
}

namespace {

struct Emitter {
  SearchEnv& env;

  std::int64_t now() { return env.clock ? env.clock->now_ms() : 0; }

  void emit(std::int64_t iteration, TraceAction action, std::vector<NodeId> nodes, json data,
            int attempts = 0) {
    if (!env.trace) return;
    TraceEvent event;
    event.iteration = iteration;
    event.action = action;
    event.nodes = std::move(nodes);
    event.data = std::move(data);
    event.ts_ms = now();
    event.attempts = attempts;
    env.trace->write(event);
  }
};

json candidates_json(const std::vector<UctCandidate>& candidates) {
  json arr = json::array();
  for (const auto& c : candidates) {
    arr.push_back({{"id", c.id},
                   {"q", c.q},
                   {"visits", c.visits},
                   {"parent_visits", c.parent_visits},
                   {"uct", c.uct}});
  }
  return arr;
}

json backprop_json(const BackpropResult& bp) {
  json updates = json::array();
  for (const auto& u : bp.updates) {
    json entry = {{"id", u.id}, {"max_child_q", u.max_child_q}, {"q_after", u.q_after}};
    if (u.q_before) entry["q_before"] = *u.q_before;
    updates.push_back(entry);
  }
  return {{"node", bp.evaluated},
          {"q_new", bp.q_new},
          {"updates", updates},
          {"root", {{"inputs", bp.root_inputs}, {"q_after", bp.root_q}}},
          {"visited", bp.visited}};
}

// Evaluates `node`, stores its feedback, backpropagates, and emits the
// Evaluate and Backprop events. Throws EvaluationFailedError upward.
FeedbackId evaluate_and_backprop(SearchState& state, Emitter& emitter, std::int64_t iteration,
                                 NodeId node) {
  SearchEnv& env = *state.env;
  const std::vector<ChatMessage> context = {{Role::User, state.tree.query()}};
  const std::size_t ledger_before = env.provider.ledger().size();

  EvalStats stats;
  EvaluationFeedback feedback;
  try {
    feedback = evaluate_response(env.provider, env.constitution, context,
                                 state.tree.node(node).content, state.config.eval_samples,
                                 env.templates, &stats);
  } catch (const EvaluationFailedError&) {
    emitter.emit(iteration, TraceAction::Evaluate, {node},
                 {{"node", node},
                  {"failed", true},
                  {"parse_failures", stats.parse_failures},
                  {"warnings", stats.warnings}},
                 env.provider.ledger().attempts_since(ledger_before));
    throw;
  }

  const FeedbackId fb_id = static_cast<FeedbackId>(state.feedbacks.size());
  state.feedbacks.push_back(feedback);
  state.tree.set_feedback(node, fb_id);

  emitter.emit(iteration, TraceAction::Evaluate, {node},
               {{"node", node},
                {"failed", false},
                {"samples", feedback.score_samples},
                {"aggregated_q", feedback.aggregated_q},
                {"parse_failures", stats.parse_failures},
                {"warnings", stats.warnings}},
               env.provider.ledger().attempts_since(ledger_before));

  const BackpropResult bp = backpropagate(state.tree, node, feedback.aggregated_q);
  emitter.emit(iteration, TraceAction::Backprop, {node}, backprop_json(bp));

  if (state.tree.node(node).origin == NodeOrigin::Initial) state.last_initial_feedback = fb_id;
  return fb_id;
}

std::string generate_content(SearchState& state, const std::string& system_prompt) {
  SearchEnv& env = *state.env;
  std::vector<ChatMessage> messages;
  messages.push_back({Role::System, system_prompt});
  messages.push_back({Role::User, render_template(env.templates.generate_user,
                                                  {{"query", state.tree.query()}})});
  const std::string content = env.provider.complete(messages, RequestKind::Generate);
  if (trim(content).empty())
    throw ProviderError("generation returned empty content", 0, 1);
  return content;
}

double current_best_q(const SearchTree& tree) { return *tree.node(best_answer(tree)).q; }

}  // namespace

SearchState initialize(SearchEnv& env, std::string query, std::string m0_text,
                       const SearchConfig& config) {
  config.validate();

  SearchState state;
  state.config = config;
  state.env = &env;
  state.meta = MetaPromptState(std::move(m0_text));
  state.tree = new_tree(query, state.meta.active_id());

  Emitter emitter{env};

  std::vector<NodeId> children;
  for (int i = 0; i < config.m_initial; ++i) {
    const std::string content = generate_content(state, state.meta.active_text());
    children.push_back(
        add_answer(state.tree, SearchTree::kRoot, content, NodeOrigin::Initial,
                   state.meta.active_id()));
  }

  emitter.emit(0, TraceAction::Init, children,
               {{"query", query},
                {"m0_id", state.meta.active_id()},
                {"config",
                 {{"c", config.c},
                  {"epsilon", config.epsilon},
                  {"m_initial", config.m_initial},
                  {"eval_samples", config.eval_samples},
                  {"max_iterations", config.max_iterations},
                  {"strict_promotion", config.strict_promotion},
                  {"seed", config.seed}}}});

  // The first child's reward seeds the root's q; each later evaluation runs
  // through the same backpropagation, which keeps the root at the mean over
  // evaluated initial children.
  for (NodeId child : children) evaluate_and_backprop(state, emitter, 0, child);

  state.best_q_history.push_back(current_best_q(state.tree));
  return state;
}

NodeId regenerate(SearchState& state) {
  SearchEnv& env = *state.env;
  if (!state.last_initial_feedback)
    throw InvalidStateError("regenerate: no evaluated initial child to learn from");

  const FeedbackId fb_id = *state.last_initial_feedback;
  const MetaPromptId candidate = synthesize_candidate(
      env.provider, state.meta, state.feedbacks[static_cast<std::size_t>(fb_id)], fb_id,
      state.tree.iteration() + 1, env.templates);
  state.pending_candidate = candidate;

  const std::string content = generate_content(state, state.meta.entry(candidate).text);
  return add_answer(state.tree, SearchTree::kRoot, content, NodeOrigin::Initial, candidate);
}

NodeId refine(SearchState& state, NodeId node) {
  SearchEnv& env = *state.env;
  const SearchNode& n = state.tree.node(node);
  if (n.kind != NodeKind::Answer)
    throw InvalidArgumentError("refine: only answer nodes can be refined");
  if (!n.feedback || !n.evaluated())
    throw InvalidStateError("refine: node has no stored evaluation feedback");

  const EvaluationFeedback& feedback = state.feedbacks[static_cast<std::size_t>(*n.feedback)];
  std::string suggestions;
  for (const auto& s : feedback.suggestions) {
    suggestions += "- ";
    suggestions += s;
    suggestions += '\n';
  }

  std::vector<ChatMessage> messages;
  messages.push_back({Role::System, state.meta.active_text()});
  messages.push_back({Role::User, state.tree.query()});
  messages.push_back({Role::Assistant, n.content});
  messages.push_back({Role::User, render_template(env.templates.refine_user,
                                                  {{"response", n.content},
                                                   {"critique", feedback.critique},
                                                   {"suggestions", suggestions}})});
  const std::string content = env.provider.complete(messages, RequestKind::Refine);
  if (trim(content).empty()) throw ProviderError("refinement returned empty content", 0, 1);
  return add_answer(state.tree, node, content, NodeOrigin::Refined, state.meta.active_id());
}

IterationEvent run_iteration(SearchState& state) {
  SearchEnv& env = *state.env;
  Emitter emitter{env};
  const std::int64_t iteration = state.tree.iteration() + 1;

  IterationEvent event;
  event.iteration = iteration;

  const auto candidates =
      selection_candidates(state.tree, state.config.c, state.config.epsilon);
  event.selected = select_next(state.tree, state.config);
  emitter.emit(iteration, TraceAction::Select, {event.selected},
               {{"candidates", candidates_json(candidates)}, {"selected", event.selected}});

  // Root q before this cycle's backpropagation: the comparison baseline for
  // the promotion decision.
  const std::optional<double> root_q_pre = state.tree.root().q;

  state.pending_candidate.reset();
  if (event.selected == SearchTree::kRoot) {
    event.action = CycleAction::Regenerate;
    event.created = regenerate(state);
    event.candidate = state.pending_candidate;
    emitter.emit(iteration, TraceAction::Regenerate, {event.created},
                 {{"node", event.created},
                  {"candidate_id", *state.pending_candidate},
                  {"feedback_id", *state.last_initial_feedback}});
  } else {
    event.action = CycleAction::Refine;
    event.created = refine(state, event.selected);
    emitter.emit(iteration, TraceAction::Refine, {event.selected, event.created},
                 {{"parent", event.selected}, {"node", event.created}});
  }

  try {
    evaluate_and_backprop(state, emitter, iteration, event.created);
    event.q_new = *state.tree.node(event.created).q;
  } catch (const EvaluationFailedError&) {
    // The node stays in the tree without a q: it is invisible to selection
    // and to best_answer, and no Q value moved.
    event.failed = true;
    ++state.failed_iterations;
    state.tree.set_iteration(iteration);
    state.best_q_history.push_back(state.best_q());
    return event;
  }

  if (event.action == CycleAction::Regenerate) {
    const bool promoted =
        should_promote(*event.q_new, root_q_pre.value_or(0.0), state.config.strict_promotion);
    PromotionEvent decision;
    decision.iteration = iteration;
    decision.candidate_id = *event.candidate;
    decision.q_new = *event.q_new;
    decision.q_root = root_q_pre.value_or(0.0);
    decision.promoted = promoted;
    state.meta.record_decision(decision);
    event.promoted = promoted;
    emitter.emit(iteration, TraceAction::Promote, {event.created},
                 {{"candidate_id", decision.candidate_id},
                  {"q_new", decision.q_new},
                  {"q_root", decision.q_root},
                  {"promoted", decision.promoted}});
  }

  state.tree.set_iteration(iteration);
  state.best_q_history.push_back(current_best_q(state.tree));
  return event;
}

std::optional<TerminationReason> check_termination(const SearchState& state) {
  if (state.tree.iteration() >= state.config.max_iterations) return TerminationReason::Budget;
  if (state.config.max_depth && state.tree.max_depth() >= *state.config.max_depth)
    return TerminationReason::Depth;
  if (state.config.quality_threshold && state.best_q() >= *state.config.quality_threshold)
    return TerminationReason::QualityThreshold;
  if (state.config.stagnation_window) {
    const std::size_t window = static_cast<std::size_t>(*state.config.stagnation_window);
    const auto& history = state.best_q_history;
    if (history.size() > window &&
        history.back() <= history[history.size() - 1 - window])
      return TerminationReason::Stagnation;
  }
  return std::nullopt;
}

SearchOutcome run_search(SearchEnv& env, std::string query, std::string m0_text,
                         const SearchConfig& config) {
  SearchState state = initialize(env, std::move(query), std::move(m0_text), config);
  Emitter emitter{env};

  std::optional<TerminationReason> reason;
  while (!(reason = check_termination(state))) run_iteration(state);

  SearchOutcome outcome;
  outcome.best_node = best_answer(state.tree);
  outcome.best_q = *state.tree.node(outcome.best_node).q;
  outcome.termination = *reason;
  outcome.iterations_run = state.tree.iteration();

  emitter.emit(state.tree.iteration(), TraceAction::Terminate, {outcome.best_node},
               {{"reason", std::string(to_string(*reason))},
                {"best_node", outcome.best_node},
                {"best_q", outcome.best_q},
                {"iterations", outcome.iterations_run},
                {"failed_iterations", state.failed_iterations}});

  outcome.tree = std::move(state.tree);
  outcome.meta = std::move(state.meta);
  outcome.feedbacks = std::move(state.feedbacks);
  outcome.best_q_history = std::move(state.best_q_history);
  return outcome;
}

}  // namespace mctsr
