#include "mctsr/replay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mctsr/errors.hpp"
#include "mctsr/evaluation.hpp"
#include "mctsr/meta_prompt.hpp"

namespace mctsr {

using nlohmann::json;

namespace {

constexpr double kTol = 1e-9;

struct TrackedNode {
  std::optional<double> q;
  std::int64_t visits = 0;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;
  bool initial = false;
};

// Mirror of the run, rebuilt purely from recorded inputs.
struct Replayer {
  std::map<NodeId, TrackedNode> nodes;
  double c = 2.8;
  double epsilon = 1e-6;
  bool strict_promotion = false;
  std::optional<double> last_aggregated_q;  // from the cycle's Evaluate event
  std::optional<double> root_q_at_select;   // baseline for the promotion law
  bool terminated = false;

  std::optional<std::string> fail;
  std::int64_t fail_iteration = 0;

  void diverge(std::int64_t iteration, std::string what) {
    if (fail) return;
    fail = std::move(what);
    fail_iteration = iteration;
  }

  void add_node(NodeId id, std::optional<NodeId> parent, bool initial) {
    TrackedNode node;
    node.parent = parent;
    node.initial = initial;
    nodes[id] = node;
    if (parent) nodes[*parent].children.push_back(id);
  }

  void handle(const TraceEvent& event);
  void handle_init(const TraceEvent& event);
  void handle_select(const TraceEvent& event);
  void handle_evaluate(const TraceEvent& event);
  void handle_backprop(const TraceEvent& event);
  void handle_promote(const TraceEvent& event);
  void handle_terminate(const TraceEvent& event);
};

void Replayer::handle_init(const TraceEvent& event) {
  const json& config = event.data.at("config");
  c = config.at("c").get<double>();
  epsilon = config.at("epsilon").get<double>();
  strict_promotion = config.value("strict_promotion", false);
  add_node(SearchTree::kRoot, std::nullopt, false);
  for (NodeId id : event.nodes) add_node(id, SearchTree::kRoot, true);
}

void Replayer::handle_select(const TraceEvent& event) {
  // The candidate set must be exactly the evaluated nodes we track, with
  // matching q, visits, and parent visits; then the argmax must agree.
  const json& candidates = event.data.at("candidates");
  std::map<NodeId, const json*> recorded;
  for (const auto& cand : candidates) recorded[cand.at("id").get<NodeId>()] = &cand;

  std::vector<NodeId> expected;
  for (const auto& [id, node] : nodes)
    if (node.q) expected.push_back(id);
  if (expected.size() != recorded.size()) {
    diverge(event.iteration, "select: candidate set size mismatch");
    return;
  }

  NodeId best = -1;
  double best_uct = 0.0;
  for (NodeId id : expected) {
    auto it = recorded.find(id);
    if (it == recorded.end()) {
      diverge(event.iteration, "select: node " + std::to_string(id) + " missing from candidates");
      return;
    }
    const json& cand = *it->second;
    const TrackedNode& node = nodes[id];
    const std::int64_t parent_visits =
        node.parent ? nodes[*node.parent].visits : event.iteration - 1;
    if (std::abs(cand.at("q").get<double>() - *node.q) > kTol) {
      diverge(event.iteration, "select: recorded q diverges for node " + std::to_string(id));
      return;
    }
    if (cand.at("visits").get<std::int64_t>() != node.visits ||
        cand.at("parent_visits").get<std::int64_t>() != parent_visits) {
      diverge(event.iteration, "select: visit counts diverge for node " + std::to_string(id));
      return;
    }
    const double uct = uct_score(*node.q, node.visits, parent_visits, c, epsilon);
    if (std::abs(cand.at("uct").get<double>() - uct) > 1e-6) {
      diverge(event.iteration, "select: recorded uct diverges for node " + std::to_string(id));
      return;
    }
    if (best < 0 || uct > best_uct) {
      best = id;
      best_uct = uct;
    }
  }
  if (event.data.at("selected").get<NodeId>() != best) {
    diverge(event.iteration, "select: argmax disagrees (expected node " + std::to_string(best) +
                                 ")");
    return;
  }
  root_q_at_select = nodes[SearchTree::kRoot].q;
}

void Replayer::handle_evaluate(const TraceEvent& event) {
  if (event.data.value("failed", false)) {
    last_aggregated_q.reset();
    return;
  }
  const auto samples = event.data.at("samples").get<std::vector<double>>();
  const double recorded = event.data.at("aggregated_q").get<double>();
  const double recomputed = aggregate_scores(samples);
  if (std::abs(recorded - recomputed) > kTol) {
    diverge(event.iteration, "evaluate: aggregated q does not match (min+mean)/2 of samples");
    return;
  }
  last_aggregated_q = recorded;
}

void Replayer::handle_backprop(const TraceEvent& event) {
  const NodeId target = event.data.at("node").get<NodeId>();
  const double q_new = event.data.at("q_new").get<double>();
  if (!nodes.count(target)) {
    diverge(event.iteration, "backprop: unknown node " + std::to_string(target));
    return;
  }
  if (last_aggregated_q && std::abs(q_new - *last_aggregated_q) > kTol) {
    diverge(event.iteration, "backprop: q_new differs from the evaluation it follows");
    return;
  }
  nodes[target].q = q_new;

  // Ancestor folds, then the root mean, each recomputed from tracked state.
  NodeId cursor = nodes[target].parent.value_or(SearchTree::kRoot);
  for (const auto& update : event.data.at("updates")) {
    const NodeId id = update.at("id").get<NodeId>();
    if (id != cursor || id == SearchTree::kRoot) {
      diverge(event.iteration, "backprop: update path does not walk parent upward");
      return;
    }
    TrackedNode& node = nodes[id];
    double max_child = 0.0;
    bool any = false;
    for (NodeId child : node.children) {
      const auto& q = nodes[child].q;
      if (q && (!any || *q > max_child)) {
        max_child = *q;
        any = true;
      }
    }
    if (std::abs(update.at("max_child_q").get<double>() - max_child) > kTol) {
      diverge(event.iteration, "backprop: max child q diverges at node " + std::to_string(id));
      return;
    }
    const double expected = node.q ? 0.5 * (*node.q + max_child) : max_child;
    if (std::abs(update.at("q_after").get<double>() - expected) > kTol) {
      diverge(event.iteration,
              "backprop: parent update is not (q + max child)/2 at node " + std::to_string(id));
      return;
    }
    node.q = expected;
    cursor = node.parent.value_or(SearchTree::kRoot);
  }
  if (cursor != SearchTree::kRoot) {
    diverge(event.iteration, "backprop: update path stops before the root");
    return;
  }

  double sum = 0.0;
  int count = 0;
  for (const auto& [id, node] : nodes) {
    if (node.initial && node.q) {
      sum += *node.q;
      ++count;
    }
  }
  const double root_expected = sum / count;
  if (std::abs(event.data.at("root").at("q_after").get<double>() - root_expected) > kTol) {
    diverge(event.iteration, "backprop: root q is not the mean over evaluated initial children");
    return;
  }
  nodes[SearchTree::kRoot].q = root_expected;

  // Visits bump along the evaluated node's ancestor path.
  std::vector<NodeId> expected_path;
  for (NodeId id = target;;) {
    expected_path.push_back(id);
    const auto& parent = nodes[id].parent;
    if (!parent) break;
    id = *parent;
  }
  if (event.data.at("visited").get<std::vector<NodeId>>() != expected_path) {
    diverge(event.iteration, "backprop: visited path mismatch");
    return;
  }
  for (NodeId id : expected_path) ++nodes[id].visits;
}

void Replayer::handle_promote(const TraceEvent& event) {
  const double q_new = event.data.at("q_new").get<double>();
  const double q_root = event.data.at("q_root").get<double>();
  const bool promoted = event.data.at("promoted").get<bool>();
  if (last_aggregated_q && std::abs(q_new - *last_aggregated_q) > kTol) {
    diverge(event.iteration, "promote: q_new differs from the cycle's evaluation");
    return;
  }
  if (root_q_at_select && std::abs(q_root - *root_q_at_select) > kTol) {
    diverge(event.iteration, "promote: q_root is not the pre-cycle root value");
    return;
  }
  if (promoted != should_promote(q_new, q_root, strict_promotion)) {
    diverge(event.iteration, "promote: decision contradicts the promotion rule");
    return;
  }
}

void Replayer::handle_terminate(const TraceEvent& event) {
  NodeId best = -1;
  double best_q = 0.0;
  for (const auto& [id, node] : nodes) {
    if (id == SearchTree::kRoot || !node.q) continue;
    if (best < 0 || *node.q > best_q) {
      best = id;
      best_q = *node.q;
    }
  }
  if (event.data.at("best_node").get<NodeId>() != best ||
      std::abs(event.data.at("best_q").get<double>() - best_q) > kTol) {
    diverge(event.iteration, "terminate: best answer disagrees with tracked q values");
    return;
  }
  terminated = true;
}

void Replayer::handle(const TraceEvent& event) {
  if (fail) return;
  if (terminated) {
    diverge(event.iteration, "event after terminate");
    return;
  }
  switch (event.action) {
    case TraceAction::Init:
      handle_init(event);
      break;
    case TraceAction::Select:
      handle_select(event);
      break;
    case TraceAction::Regenerate:
      add_node(event.data.at("node").get<NodeId>(), SearchTree::kRoot, true);
      break;
    case TraceAction::Refine:
      add_node(event.data.at("node").get<NodeId>(), event.data.at("parent").get<NodeId>(), false);
      break;
    case TraceAction::Evaluate:
      handle_evaluate(event);
      break;
    case TraceAction::Backprop:
      handle_backprop(event);
      break;
    case TraceAction::Promote:
      handle_promote(event);
      break;
    case TraceAction::Terminate:
      handle_terminate(event);
      break;
  }
}

}  // namespace

ReplayReport verify_trace(const std::vector<TraceEvent>& events, const json* snapshot) {
  ReplayReport report;
  if (events.empty() || events.front().action != TraceAction::Init) {
    report.detail = "trace does not start with an init event";
    return report;
  }

  Replayer replayer;
  std::int64_t prev_iteration = 0;
  for (const auto& event : events) {
    if (event.iteration < prev_iteration) {
      report.divergence_iteration = event.iteration;
      report.detail = "iterations decrease";
      return report;
    }
    prev_iteration = event.iteration;
    try {
      replayer.handle(event);
    } catch (const std::exception& e) {
      report.divergence_iteration = event.iteration;
      report.detail = std::string("malformed event: ") + e.what();
      return report;
    }
    if (replayer.fail) {
      report.divergence_iteration = replayer.fail_iteration;
      report.detail = *replayer.fail;
      return report;
    }
  }
  if (!replayer.terminated) {
    report.detail = "trace ends without a terminate event";
    return report;
  }

  if (snapshot) {
    try {
      for (const auto& node : snapshot->at("nodes")) {
        const NodeId id = node.at("id").get<NodeId>();
        auto it = replayer.nodes.find(id);
        if (it == replayer.nodes.end()) {
          report.detail = "snapshot node " + std::to_string(id) + " never appeared in the trace";
          return report;
        }
        const auto& tracked = it->second;
        const bool snap_has_q = !node.at("q").is_null();
        if (snap_has_q != tracked.q.has_value() ||
            (snap_has_q && std::abs(node.at("q").get<double>() - *tracked.q) > kTol)) {
          report.detail = "snapshot q disagrees with replay for node " + std::to_string(id);
          return report;
        }
        if (node.at("visits").get<std::int64_t>() != tracked.visits) {
          report.detail = "snapshot visits disagree with replay for node " + std::to_string(id);
          return report;
        }
      }
      if (snapshot->at("nodes").size() != replayer.nodes.size()) {
        report.detail = "snapshot and trace disagree on node count";
        return report;
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("snapshot: ") + e.what());
    }
  }

  report.verified = true;
  return report;
}

}  // namespace mctsr
