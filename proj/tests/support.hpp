#pragma once

#include <json.hpp>

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mctsr/orchestrator.hpp"
#include "mctsr/provider.hpp"
#include "mctsr/tree.hpp"

namespace mctsr::testing {

// Self-deleting temp directory for file-based tests.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::atomic<int> counter{0};
    path = std::filesystem::temp_directory_path() /
           ("mctsr_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::string eval_payload(double score, const std::string& critique = "c",
                                const std::vector<std::string>& suggestions = {"s"}) {
  nlohmann::json doc;
  doc["critique"] = critique;
  doc["score"] = score;
  doc["suggestions"] = suggestions;
  return doc.dump();
}

// Provider driven by a lambda; for behavior that a static rule list cannot
// express (score schedules derived from request content).
class CallbackProvider final : public ModelProvider {
 public:
  using Fn = std::function<std::string(const std::vector<ChatMessage>&, RequestKind)>;

  explicit CallbackProvider(Fn fn) : fn_(std::move(fn)) {}

  std::string complete(const std::vector<ChatMessage>& messages, RequestKind kind) override {
    check_messages(messages);
    UsageEntry entry;
    entry.kind = kind;
    ledger_.append(entry);
    return fn_(messages, kind);
  }

 private:
  Fn fn_;
};

// Responses carry their own judge score as "(s=X)". Refinements score one
// point above the text they refine, capped at 10; fresh generations follow a
// fixed 6, 7, 8, 9, 10, 10, ... schedule.
class ImprovingProvider final : public ModelProvider {
 public:
  std::string complete(const std::vector<ChatMessage>& messages, RequestKind kind) override {
    check_messages(messages);
    UsageEntry entry;
    entry.kind = kind;
    ledger_.append(entry);
    switch (kind) {
      case RequestKind::Generate: {
        const double score = std::min(10.0, 6.0 + generated_++);
        return "draft " + std::to_string(generated_) + " (s=" + format(score) + ")";
      }
      case RequestKind::Refine: {
        const double parent = last_embedded_score(messages);
        const double score = std::min(10.0, parent + 1.0);
        return "revision " + std::to_string(++refined_) + " (s=" + format(score) + ")";
      }
      case RequestKind::Evaluate:
        return eval_payload(last_embedded_score(messages));
      case RequestKind::Synthesize:
        return "adapted prompt " + std::to_string(++synthesized_);
    }
    return "";
  }

  static double last_embedded_score(const std::vector<ChatMessage>& messages) {
    double score = 0.0;
    bool found = false;
    for (const auto& m : messages) {
      std::size_t pos = 0;
      while ((pos = m.content.find("(s=", pos)) != std::string::npos) {
        score = std::stod(m.content.substr(pos + 3));
        found = true;
        ++pos;
      }
    }
    if (!found) throw std::logic_error("no embedded score in request");
    return score;
  }

 private:
  static std::string format(double v) {
    std::string s = std::to_string(v);
    return s;
  }

  int generated_ = 0;
  int refined_ = 0;
  int synthesized_ = 0;
};

// Matched-mode script for a three-child, four-cycle search that exercises
// both refinement of initial answers and of refined answers. All four cycles
// select an answer node, so the trace contains no promotion events.
inline ScriptedScript demo_search_script() {
  ScriptedScript script;
  script.mode = ScriptMode::Matched;
  auto rule = [&](std::optional<RequestKind> kind, std::optional<std::string> contains,
                  std::string reply, std::int64_t uses) {
    script.rules.push_back({kind, std::move(contains), std::move(reply), uses});
  };
  rule(RequestKind::Generate, std::nullopt, "Answer A", 1);
  rule(RequestKind::Generate, std::nullopt, "Answer B", 1);
  rule(RequestKind::Generate, std::nullopt, "Answer C", 1);
  rule(RequestKind::Refine, "Answer C", "Refined 1", 1);
  rule(RequestKind::Refine, "Answer B", "Refined 2", 1);
  rule(RequestKind::Refine, "Refined 2", "Refined 3", 1);
  rule(RequestKind::Refine, "Refined 3", "Refined 4", 1);
  rule(RequestKind::Evaluate, "Answer A", eval_payload(6), -1);
  rule(RequestKind::Evaluate, "Answer B", eval_payload(7), -1);
  rule(RequestKind::Evaluate, "Answer C", eval_payload(8), -1);
  rule(RequestKind::Evaluate, "Refined 1", eval_payload(7), -1);
  rule(RequestKind::Evaluate, "Refined 2", eval_payload(9), -1);
  rule(RequestKind::Evaluate, "Refined 3", eval_payload(9.5), -1);
  rule(RequestKind::Evaluate, "Refined 4", eval_payload(8), -1);
  return script;
}

inline SearchConfig demo_search_config() {
  SearchConfig config;
  config.c = 2.8;
  config.epsilon = 1e-6;
  config.m_initial = 3;
  config.eval_samples = 1;
  config.max_iterations = 4;
  return config;
}

// Random tree for selection-oracle and round-trip properties. Every node
// gets well-formed q/visits; `evaluated_bias` controls how many stay
// unevaluated.
inline SearchTree random_tree(std::mt19937_64& rng, int max_nodes = 10,
                              double evaluated_bias = 0.85) {
  std::uniform_int_distribution<int> node_count_dist(1, max_nodes - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Coarse grids make exact UCT ties reachable, exercising the tie-break.
  std::uniform_int_distribution<int> q_grid(0, 4);
  std::uniform_int_distribution<int> visit_grid(0, 3);
  std::uniform_int_distribution<std::int64_t> iter_dist(0, 40);

  SearchTree tree = new_tree("query " + std::to_string(rng()), 0);
  const int answers = node_count_dist(rng);
  for (int i = 0; i < answers; ++i) {
    std::uniform_int_distribution<NodeId> parent_dist(0, static_cast<NodeId>(tree.node_count()) - 1);
    const NodeId parent = parent_dist(rng);
    const NodeOrigin origin = parent == SearchTree::kRoot ? NodeOrigin::Initial : NodeOrigin::Refined;
    const NodeId id = add_answer(tree, parent, "answer " + std::to_string(i), origin, 0);
    if (unit(rng) < evaluated_bias) tree.set_q(id, 2.0 + 2.0 * q_grid(rng));
    for (int v = visit_grid(rng); v > 0; --v) tree.bump_visits(id);
  }
  if (unit(rng) < 0.8) tree.set_q(SearchTree::kRoot, 2.0 + 2.0 * q_grid(rng));
  for (int v = visit_grid(rng); v > 0; --v) tree.bump_visits(SearchTree::kRoot);
  tree.set_iteration(iter_dist(rng));
  return tree;
}

}  // namespace mctsr::testing
