#include "mctsr/evaluation.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

#include "mctsr/errors.hpp"
#include "mctsr/prompts.hpp"

namespace mctsr {

using nlohmann::json;

double aggregate_scores(std::span<const double> samples) {
  if (samples.empty()) throw InvalidArgumentError("aggregate_scores: no samples");
  for (double s : samples)
    if (!(s >= 0.0 && s <= 10.0))
      throw InvalidArgumentError("aggregate_scores: sample out of [0,10]");
  const double min = *std::min_element(samples.begin(), samples.end());
  const double mean =
      std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  return 0.5 * (min + mean);
}

namespace {

// Pulls the outermost JSON object out of a reply that may wrap it in prose or
// a code fence.
json extract_object(std::string_view raw) {
  const auto first = raw.find('{');
  const auto last = raw.rfind('}');
  if (first == std::string_view::npos || last == std::string_view::npos || last < first)
    throw ParseError("evaluation reply contains no JSON object");
  try {
    return json::parse(raw.substr(first, last - first + 1));
  } catch (const json::exception& e) {
    throw ParseError(std::string("evaluation reply is not valid JSON: ") + e.what());
  }
}

}  // namespace

ParsedEvaluation parse_evaluation(std::string_view raw) {
  const json doc = extract_object(raw);
  if (!doc.is_object()) throw ParseError("evaluation reply is not a JSON object");
  if (!doc.contains("critique") || !doc["critique"].is_string())
    throw ParseError("evaluation reply missing string field 'critique'");
  if (!doc.contains("score") || !doc["score"].is_number())
    throw ParseError("evaluation reply missing numeric field 'score'");
  if (!doc.contains("suggestions") || !doc["suggestions"].is_array())
    throw ParseError("evaluation reply missing array field 'suggestions'");

  ParsedEvaluation out;
  out.critique = doc["critique"].get<std::string>();
  out.score = doc["score"].get<double>();
  for (const auto& s : doc["suggestions"]) {
    if (!s.is_string()) throw ParseError("evaluation reply has a non-string suggestion");
    out.suggestions.push_back(s.get<std::string>());
  }
  if (out.score < 0.0 || out.score > 10.0) {
    out.score = std::clamp(out.score, 0.0, 10.0);
    out.clamped = true;
  }
  return out;
}

EvaluationFeedback evaluate_response(ModelProvider& provider, const Constitution& constitution,
                                     const std::vector<ChatMessage>& context,
                                     std::string_view response, int n_samples,
                                     const PromptTemplates& templates, EvalStats* stats) {
  if (n_samples < 1) throw InvalidArgumentError("evaluate_response: n_samples must be >= 1");
  if (response.empty()) throw InvalidArgumentError("evaluate_response: response must be non-empty");

  std::string context_text;
  for (const auto& m : context) {
    context_text += std::string(to_string(m.role));
    context_text += ": ";
    context_text += m.content;
    context_text += '\n';
  }

  std::vector<ChatMessage> messages;
  messages.push_back({Role::System, render_template(templates.evaluate_system,
                                                    {{"constitution", constitution.render()}})});
  messages.push_back(
      {Role::User, render_template(templates.evaluate_user, {{"context", context_text},
                                                             {"response", std::string(response)}})});

  EvaluationFeedback feedback;
  EvalStats local;
  local.requested = n_samples;
  bool have_text = false;
  for (int i = 0; i < n_samples; ++i) {
    const std::string raw = provider.complete(messages, RequestKind::Evaluate);
    try {
      ParsedEvaluation parsed = parse_evaluation(raw);
      if (parsed.clamped)
        local.warnings.push_back("sample " + std::to_string(i) + ": score clamped to [0,10]");
      feedback.score_samples.push_back(parsed.score);
      if (!have_text) {
        feedback.critique = std::move(parsed.critique);
        feedback.suggestions = std::move(parsed.suggestions);
        have_text = true;
      }
      ++local.parsed;
    } catch (const ParseError& e) {
      // Partial failure is tolerated; the cycle only fails when every sample does.
      ++local.parse_failures;
      local.warnings.push_back("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  if (stats) *stats = local;
  if (feedback.score_samples.empty())
    throw EvaluationFailedError("evaluate_response: all " + std::to_string(n_samples) +
                                " samples failed to parse");
  feedback.aggregated_q = aggregate_scores(feedback.score_samples);
  return feedback;
}

}  // namespace mctsr
