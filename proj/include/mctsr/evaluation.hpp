#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mctsr/provider.hpp"

namespace mctsr {

struct PromptTemplates;

// One standard of the rubric. scale_max applies to per-criterion judging in
// the benchmark harness; the in-search evaluator always scores 0-10 overall.
struct Standard {
  std::string key;
  std::string title;
  std::string description;
  int scale_max = 5;
  double weight = 1.0;
};

struct Constitution {
  std::vector<Standard> standards;

  void validate() const;
  const Standard& standard(std::string_view key) const;  // throws NotFoundError
  // Numbered plain-text listing used inside evaluation prompts.
  std::string render() const;
};

// The default sixteen-standard rubric, in report column order.
const Constitution& default_constitution();

// Keys of the nine standards whose means form the ESHCC-R subtotal.
std::span<const std::string_view> eshcc_r_keys();

// (min + mean) / 2 — rewards average quality while punishing low outliers.
double aggregate_scores(std::span<const double> samples);

struct ParsedEvaluation {
  std::string critique;
  double score = 0.0;
  std::vector<std::string> suggestions;
  bool clamped = false;  // score fell outside [0,10] and was clamped
};

// Parses one judge reply: {"critique": string, "score": number,
// "suggestions": [string, ...]}. Tolerates surrounding prose or code fences
// around the JSON object.
ParsedEvaluation parse_evaluation(std::string_view raw);

struct EvaluationFeedback {
  std::string critique;
  std::vector<std::string> suggestions;
  std::vector<double> score_samples;
  double aggregated_q = 0.0;
  std::map<std::string, std::string> standard_notes;
};

struct EvalStats {
  int requested = 0;
  int parsed = 0;
  int parse_failures = 0;
  std::vector<std::string> warnings;
};

// Runs n_samples judge calls, keeps every score that parses, and aggregates.
// Critique and suggestions come from the first sample that parsed. Throws
// EvaluationFailedError when no sample parses; provider errors propagate.
EvaluationFeedback evaluate_response(ModelProvider& provider, const Constitution& constitution,
                                     const std::vector<ChatMessage>& context,
                                     std::string_view response, int n_samples,
                                     const PromptTemplates& templates,
                                     EvalStats* stats = nullptr);

}  // namespace mctsr
