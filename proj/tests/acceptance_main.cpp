// Acceptance suite: every criterion below runs in-process against the public
// API or the CLI entry points and prints one PASS/FAIL line. The binary exits
// nonzero when any criterion fails.

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "mctsr/cli.hpp"
#include "mctsr/json_io.hpp"
#include "mctsr/orchestrator.hpp"
#include "mctsr/persistence.hpp"
#include "mctsr/replay.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace mctsr;
using namespace mctsr::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void check(bool condition, const std::string& what) {
  if (!condition) throw std::runtime_error(what);
}

void check_near(double actual, double expected, double tol, const std::string& what) {
  if (std::abs(actual - expected) > tol)
    throw std::runtime_error(what + ": got " + std::to_string(actual) + ", want " +
                             std::to_string(expected) + " +/- " + std::to_string(tol));
}

void criterion(int number, const std::string& name, const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    body();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::printf("[PASS] criterion %d: %s (%lld ms)\n", number, name.c_str(),
                static_cast<long long>(ms));
  } catch (const std::exception& e) {
    ++g_failures;
    std::printf("[FAIL] criterion %d: %s - %s\n", number, name.c_str(), e.what());
  }
  std::fflush(stdout);
}

// --- criterion 1 -----------------------------------------------------------

void formula_fixtures() {
  check_near(aggregate_scores(std::vector<double>{7, 8, 9}), 7.5, 1e-12, "aggregate [7,8,9]");
  check_near(aggregate_scores(std::vector<double>{8, 8, 8}), 8.0, 1e-12, "aggregate [8,8,8]");
  check_near(aggregate_scores(std::vector<double>{10}), 10.0, 1e-12, "aggregate [10]");

  check_near(uct_score(5.0, 1, 1, 2.8, 1e-6), 7.3312, 1e-3, "uct(5,1,1)");
  check_near(uct_score(0.0, 0, 1, 2.8, 1e-6), 2331.1, 0.5, "uct unvisited");

  // Chain root -> a(6) -> b, evaluate b with 8: a becomes (6+8)/2 = 7.
  SearchTree tree = new_tree("q", 0);
  const NodeId a = add_answer(tree, SearchTree::kRoot, "a", NodeOrigin::Initial, 0);
  const NodeId b = add_answer(tree, a, "b", NodeOrigin::Refined, 0);
  tree.set_q(a, 6.0);
  backpropagate(tree, b, 8.0);
  check_near(*tree.node(a).q, 7.0, 1e-12, "backprop fold");

  SearchTree mean_tree = new_tree("q", 0);
  const NodeId x = add_answer(mean_tree, SearchTree::kRoot, "x", NodeOrigin::Initial, 0);
  const NodeId y = add_answer(mean_tree, SearchTree::kRoot, "y", NodeOrigin::Initial, 0);
  backpropagate(mean_tree, x, 7.0);
  backpropagate(mean_tree, y, 9.0);
  check_near(*mean_tree.root().q, 8.0, 1e-12, "root mean {7,9}");

  check(should_promote(8.0, 7.5), "promote 8 vs 7.5");
  check(should_promote(7.5, 7.5), "promote at equality");
  check(!should_promote(7.0, 7.5), "reject 7 vs 7.5");

  // Selection fixture: root q=7/3 visits vs children 6 (2 visits), 9 (1).
  SearchTree sel = new_tree("q", 0);
  const NodeId c1 = add_answer(sel, SearchTree::kRoot, "c1", NodeOrigin::Initial, 0);
  const NodeId c2 = add_answer(sel, SearchTree::kRoot, "c2", NodeOrigin::Initial, 0);
  sel.set_q(SearchTree::kRoot, 7.0);
  sel.set_q(c1, 6.0);
  sel.set_q(c2, 9.0);
  for (int i = 0; i < 3; ++i) sel.bump_visits(SearchTree::kRoot);
  sel.bump_visits(c1);
  sel.bump_visits(c1);
  sel.bump_visits(c2);
  sel.set_iteration(3);
  check(select_next(sel, SearchConfig{}) == c2, "selection fixture picks q=9 child");
}

// --- criterion 2 -----------------------------------------------------------

void table_arithmetic() {
  const Constitution& constitution = default_constitution();
  auto row_report = [&](const BenchmarkRow& row) {
    ScenarioScores scores;
    scores.scenario_id = "fixture";
    for (std::size_t i = 0; i < 16; ++i)
      scores.scores.push_back({constitution.standards[i].key, row.means[i], ""});
    return aggregate_report(row.model, constitution, {scores});
  };
  for (const auto& row : kBenchmarkRows) {
    const BenchmarkReport report = row_report(row);
    if (row.model == std::string(kMisprintedTotalRow))
      check_near(report.total_score, kMisprintedRowColumnSum, 1e-9,
                 std::string("column sum for ") + row.model);
    else
      check_near(report.total_score, row.total, 0.02 + 1e-9,
                 std::string("total for ") + row.model);
  }
  check_near(row_report(kBenchmarkRows[0]).eshcc_r_subtotal, kPsyllmLargeEshccR, 0.02,
             "ESHCC-R for PsyLLM-Large");
  check_near(row_report(kBenchmarkRows[2]).eshcc_r_subtotal, kClaude37EshccR, 0.02,
             "ESHCC-R for claude-3-7-sonnet");
}

// --- criterion 3 -----------------------------------------------------------

void deterministic_replay() {
  TempDir dir;
  save_json(dir.path / "run.json",
            json{{"queries", {"I worry about exams"}},
                 {"meta_prompt", "m0"},
                 {"search", search_config_to_json(demo_search_config())},
                 {"provider",
                  {{"type", "scripted"},
                   {"scripted", {{"inline", script_to_json(demo_search_script())}}}}},
                 {"out_dir", "runs"}});

  std::ostringstream out, err;
  cli::RunOptions first{(dir.path / "run.json").string()};
  first.out_dir = (dir.path / "out1").string();
  cli::RunOptions second{(dir.path / "run.json").string()};
  second.out_dir = (dir.path / "out2").string();
  check(cli::cmd_run(first, out, err) == 0, "first run exits 0");
  check(cli::cmd_run(second, out, err) == 0, "second run exits 0");

  auto only_dir = [](const fs::path& parent) {
    for (const auto& entry : fs::directory_iterator(parent))
      if (entry.is_directory()) return entry.path();
    throw std::runtime_error("no run directory under " + parent.string());
  };
  const fs::path run1 = only_dir(dir.path / "out1");
  const fs::path run2 = only_dir(dir.path / "out2");
  check(read_file(run1 / "snapshot.json") == read_file(run2 / "snapshot.json"),
        "snapshots byte-identical");
  check(read_file(run1 / "trace.jsonl") == read_file(run2 / "trace.jsonl"),
        "traces byte-identical");

  std::ostringstream replay_out, replay_err;
  check(cli::cmd_replay({run1.string()}, replay_out, replay_err) == 0, "replay exits 0");
  check(replay_out.str() == "verified\n", "replay reports verified");
}

// --- criterion 4 -----------------------------------------------------------

void selection_oracle() {
  std::mt19937_64 rng(20250809);
  int compared = 0;
  for (int round = 0; round < 200; ++round) {
    const SearchTree tree = random_tree(rng, 10);
    const SearchConfig config;

    // Exhaustive recomputation, independent of selection_candidates.
    NodeId expected = -1;
    long double best = 0.0L;
    for (NodeId id = 0; id < static_cast<NodeId>(tree.node_count()); ++id) {
      const SearchNode& node = tree.node(id);
      if (!node.q) continue;
      const long double parent_visits =
          node.parent ? static_cast<long double>(tree.node(*node.parent).visits)
                      : static_cast<long double>(tree.iteration());
      const long double uct =
          static_cast<long double>(*node.q) +
          static_cast<long double>(config.c) *
              std::sqrt(std::log(parent_visits + 1.0L) /
                        (static_cast<long double>(node.visits) + config.epsilon));
      if (expected < 0 || uct > best) {
        expected = id;
        best = uct;
      }
    }
    if (expected < 0) {
      bool threw = false;
      try {
        select_next(tree, config);
      } catch (const InvalidStateError&) {
        threw = true;
      }
      check(threw, "selection without candidates must fail");
      continue;
    }
    check(select_next(tree, config) == expected,
          "selection oracle mismatch in round " + std::to_string(round));
    ++compared;
  }
  check(compared >= 150, "oracle must compare a meaningful sample");
}

// --- criterion 5 -----------------------------------------------------------

void ablation_shape() {
  ImprovingProvider provider;
  SearchEnv env{provider};
  const SearchOutcome outcome = run_search(env, "q", "m0", demo_search_config());
  const auto& h = outcome.best_q_history;  // [init, after 1, 2, 3, 4]
  check(h.size() == 5, "history covers init plus four cycles");
  check(h[4] >= h[2] && h[2] >= h[1] && h[1] >= h[0], "best q is monotone over iterations");
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (h[i - 1] < 10.0)
      check(h[i] > h[i - 1], "best q strictly increases below the cap");
  }
  check_near(h[0], 8.0, 1e-9, "baseline best q");
  check_near(outcome.best_q, 10.0, 1e-9, "cap reached");
}

// --- criterion 6 -----------------------------------------------------------

void promotion_law() {
  std::mt19937_64 rng(424242);
  int promoted = 0, rejected = 0;
  for (int round = 0; round < 50; ++round) {
    std::mt19937_64 score_rng(rng());
    int names = 0;
    CallbackProvider provider([&](const std::vector<ChatMessage>& messages, RequestKind kind) {
      auto roll = [&score_rng] { return 0.5 * (score_rng() % 21); };
      switch (kind) {
        case RequestKind::Generate:
          return "gen " + std::to_string(++names) + " (s=" + std::to_string(roll()) + ")";
        case RequestKind::Refine:
          return "ref " + std::to_string(++names) + " (s=" + std::to_string(roll()) + ")";
        case RequestKind::Evaluate:
          return eval_payload(ImprovingProvider::last_embedded_score(messages));
        case RequestKind::Synthesize:
          return "cand " + std::to_string(++names);
      }
      return std::string();
    });

    MemoryTrace trace;
    SearchEnv env{provider};
    env.trace = &trace;
    SearchConfig config = demo_search_config();
    config.m_initial = 1 + static_cast<int>(rng() % 3);
    config.max_iterations = 1000000;
    SearchState state = initialize(env, "q", "m0", config);
    if (round % 2 == 0)
      state.tree.set_iteration(100 + static_cast<std::int64_t>(rng() % 900));
    for (int cycle = 0; cycle < 6; ++cycle) run_iteration(state);

    // Reimplementation of the promotion rule applied to the trace alone.
    MetaPromptId predicted_active = 0;
    std::vector<PromotionEvent> predicted;
    double root_q = 0.0, pre_cycle_root = 0.0;
    std::optional<double> last_eval;
    std::optional<MetaPromptId> candidate;
    MetaPromptId next_candidate = 1;
    for (const auto& event : trace.events()) {
      switch (event.action) {
        case TraceAction::Select:
          pre_cycle_root = root_q;
          candidate.reset();
          break;
        case TraceAction::Regenerate:
          candidate = next_candidate++;
          break;
        case TraceAction::Evaluate:
          if (!event.data.value("failed", false))
            last_eval = event.data.at("aggregated_q").get<double>();
          break;
        case TraceAction::Backprop:
          root_q = event.data.at("root").at("q_after").get<double>();
          break;
        case TraceAction::Promote: {
          check(candidate && last_eval, "promotion event without a regeneration");
          const bool win = should_promote(*last_eval, pre_cycle_root);
          predicted.push_back({event.iteration, *candidate, *last_eval, pre_cycle_root, win});
          if (win) predicted_active = *candidate;
          break;
        }
        default:
          break;
      }
    }

    check(predicted_active == state.meta.active_id(),
          "active prompt prediction diverged in round " + std::to_string(round));
    check(predicted.size() == state.meta.promotions().size(), "promotion event count");
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      const PromotionEvent& actual = state.meta.promotions()[i];
      check(predicted[i].candidate_id == actual.candidate_id &&
                predicted[i].promoted == actual.promoted &&
                std::abs(predicted[i].q_new - actual.q_new) < 1e-9 &&
                std::abs(predicted[i].q_root - actual.q_root) < 1e-9,
            "promotion event mismatch in round " + std::to_string(round));
      (actual.promoted ? promoted : rejected) += 1;
    }
  }
  check(promoted > 0, "law must be exercised by actual promotions");
  check(rejected > 0, "law must be exercised by rejections");
}

// --- criterion 7 -----------------------------------------------------------

void invariant_suite() {
  std::mt19937_64 rng(7777);
  int cases = 0;

  // Structural invariants and snapshot round-trips over random trees.
  for (int round = 0; round < 400; ++round) {
    SearchTree tree = random_tree(rng);
    tree.validate();
    const SearchTree reloaded = tree_from_json(tree_to_json(tree));
    reloaded.validate();
    check(tree_to_json(reloaded).dump() == tree_to_json(tree).dump(), "snapshot round-trip");
    ++cases;
  }

  // Q-sandwich and root-mean laws over random backpropagations.
  std::uniform_real_distribution<double> q_dist(0.0, 10.0);
  for (int round = 0; round < 300; ++round) {
    SearchTree tree = random_tree(rng, 10, 1.0);
    std::vector<NodeId> answers;
    for (NodeId id = 1; id < static_cast<NodeId>(tree.node_count()); ++id) answers.push_back(id);
    if (answers.empty()) continue;
    const NodeId target = answers[rng() % answers.size()];
    const BackpropResult result = backpropagate(tree, target, q_dist(rng));
    for (const auto& update : result.updates) {
      const double lo = std::min(update.q_before.value_or(update.max_child_q), update.max_child_q);
      const double hi = std::max(update.q_before.value_or(update.max_child_q), update.max_child_q);
      check(update.q_after >= lo - 1e-12 && update.q_after <= hi + 1e-12, "q sandwich");
    }
    double sum = 0.0;
    int n = 0;
    for (NodeId id : tree.initial_children()) {
      if (tree.node(id).q) {
        sum += *tree.node(id).q;
        ++n;
      }
    }
    check(std::abs(*tree.root().q - sum / n) <= 1e-9, "root equals the initial-children mean");
    tree.validate();
    ++cases;
  }

  // Aggregation properties.
  for (int round = 0; round < 200; ++round) {
    std::vector<double> samples(1 + rng() % 6);
    for (auto& s : samples) s = q_dist(rng);
    const double agg = aggregate_scores(samples);
    double mean = 0.0, min = samples[0];
    for (double s : samples) {
      mean += s;
      min = std::min(min, s);
    }
    mean /= samples.size();
    check(agg >= min - 1e-12 && agg <= mean + 1e-12 && agg >= 0.0 && agg <= 10.0,
          "aggregate bounds");
    ++cases;
  }

  // Transcript alternation over scripted dialogues.
  for (int round = 0; round < 60; ++round) {
    ScriptedScript any;
    any.mode = ScriptMode::Matched;
    any.rules.push_back({RequestKind::Generate, std::nullopt, "turn text", -1});
    ScriptedProvider counselor(any), client(any);
    const int max_turns = 2 * (1 + static_cast<int>(rng() % 5));
    const CaseScenario scenario{"s", "Anxiety", "outline"};
    const DialogueTranscript transcript =
        simulate_dialogue(counselor, client, scenario, max_turns, PromptTemplates::defaults());
    transcript.validate();
    const DialogueTranscript reloaded = transcript_from_json(transcript_to_json(transcript));
    reloaded.validate();
    ++cases;
  }

  // Meta-prompt state and feedback snapshot round-trips.
  for (int round = 0; round < 60; ++round) {
    MetaPromptState state("seed");
    MetaPromptId last = 0;
    for (int i = 0; i < static_cast<int>(rng() % 5); ++i) {
      last = state.add_synthesized("prompt " + std::to_string(i), i, i);
      state.record_decision({i, last, q_dist(rng), q_dist(rng), (rng() % 2) == 0});
    }
    const MetaPromptState reloaded = meta_state_from_json(meta_state_to_json(state));
    check(reloaded.active_id() == state.active_id(), "meta state round-trip active id");
    check(reloaded.prompts().size() == state.prompts().size(), "meta state round-trip size");
    MetaPromptId replay_active = 0;
    for (const auto& event : reloaded.promotions())
      if (event.promoted) replay_active = event.candidate_id;
    check(replay_active == reloaded.active_id(), "promotion log reconstructs the active id");

    EvaluationFeedback feedback;
    feedback.critique = "c";
    feedback.score_samples.push_back(q_dist(rng));
    feedback.score_samples.push_back(q_dist(rng));
    feedback.aggregated_q = aggregate_scores(feedback.score_samples);
    const EvaluationFeedback fb2 = feedback_from_json(feedback_to_json(feedback));
    check(fb2.aggregated_q == feedback.aggregated_q &&
              aggregate_scores(fb2.score_samples) == fb2.aggregated_q,
          "feedback aggregation is stable across the round-trip");
    ++cases;
  }

  check(cases >= 1000, "at least 1000 generated cases (got " + std::to_string(cases) + ")");
}

// --- criterion 8 -----------------------------------------------------------

void harness_end_to_end() {
  // Full 64-scenario eval through the CLI against scripted chat providers.
  TempDir dir;
  ScriptedScript chat;
  chat.mode = ScriptMode::Matched;
  chat.rules.push_back({RequestKind::Generate, std::nullopt, "turn text", -1});
  ScriptedScript judge;
  judge.mode = ScriptMode::Matched;
  judge.rules.push_back(
      {RequestKind::Evaluate, std::nullopt, json{{"score", 3}, {"rationale", "r"}}.dump(), -1});
  auto block = [](const ScriptedScript& s) {
    return json{{"type", "scripted"}, {"scripted", {{"inline", script_to_json(s)}}}};
  };
  save_json(dir.path / "eval.json", json{{"model_label", "harness-check"},
                                         {"max_turns", 4},
                                         {"counselor_provider", block(chat)},
                                         {"client_provider", block(chat)},
                                         {"judge_provider", block(judge)},
                                         {"out_dir", "evals"}});
  std::ostringstream out, err;
  check(cli::cmd_eval({(dir.path / "eval.json").string()}, out, err) == 0, "eval exits 0");

  fs::path run_dir;
  for (const auto& entry : fs::directory_iterator(dir.path / "evals"))
    if (entry.is_directory()) run_dir = entry.path();
  const json report = load_json(run_dir / "report.json");
  check(report["scenario_count"] == 64, "all 64 scenarios scored");
  check(report["criterion_means"].size() == 16, "sixteen criterion means");
  double sum = 0.0;
  for (const auto& entry : report["criterion_means"]) sum += entry["mean"].get<double>();
  check(std::abs(report["total_score"].get<double>() - sum) < 1e-9,
        "total equals the sum of the means");
  check(report["eshcc_r_subtotal"].get<double>() > 0.0, "subtotal present");

  // The same engine drives a live chat-completion endpoint: a local server
  // that answers generations with text and evaluations with judge JSON.
  httplib::Server server;
  server.Post("/v1/chat/completions", [](const httplib::Request& req, httplib::Response& res) {
    const json body = json::parse(req.body);
    std::string all;
    for (const auto& m : body["messages"]) all += m["content"].get<std::string>();
    const bool is_eval = all.find("Response under review") != std::string::npos;
    const std::string content =
        is_eval ? json{{"critique", "ok"}, {"score", 7}, {"suggestions", {"more warmth"}}}.dump()
                : std::string("endpoint answer");
    res.set_content(
        json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}.dump(),
        "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ProviderConfig http_config;
  http_config.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
  http_config.model_name = "endpoint-model";
  HttpProvider http(http_config);
  SearchEnv env{http};
  SearchConfig config = demo_search_config();
  config.max_iterations = 1;
  const SearchOutcome outcome = run_search(env, "hello", "m0", config);
  server.stop();
  server_thread.join();
  check(outcome.best_q == 7.0, "http-backed search produced the endpoint's score");
  check(outcome.tree.node_count() == 5, "http-backed search built the tree");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion(1, "formula fixtures", formula_fixtures);
  criterion(2, "benchmark table arithmetic", table_arithmetic);
  criterion(3, "deterministic replay", deterministic_replay);
  criterion(4, "brute-force selection oracle", selection_oracle);
  criterion(5, "iterative refinement raises best q", ablation_shape);
  criterion(6, "meta-prompt promotion law", promotion_law);
  criterion(7, "invariant suite", invariant_suite);
  criterion(8, "harness end-to-end", harness_end_to_end);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
