#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mctsr/evaluation.hpp"
#include "mctsr/prompts.hpp"
#include "mctsr/provider.hpp"
#include "mctsr/tree.hpp"

namespace mctsr {

// The sixteen scenario categories; every scenario must use one of these.
std::span<const std::string_view> scenario_categories();

struct CaseScenario {
  std::string id;
  std::string category;
  std::string outline;
};

struct ScenarioLibrary {
  std::vector<CaseScenario> scenarios;

  void validate() const;
  std::vector<CaseScenario> filtered(const std::optional<std::string>& category) const;
};

// Built-in library: four scenarios for each of the sixteen categories.
const ScenarioLibrary& default_scenario_library();

enum class Speaker { Client, Counselor };

std::string_view to_string(Speaker s);
Speaker speaker_from_string(std::string_view s);

struct DialogueTurn {
  Speaker speaker = Speaker::Client;
  std::string content;
};

struct DialogueTranscript {
  std::string scenario_id;
  std::vector<DialogueTurn> turns;
  std::string counselor_model;

  // Alternation starting with the client; throws InvalidStateError otherwise.
  void validate() const;
  std::string render() const;
};

// Client role-plays the scenario outline, counselor responds; exactly
// max_turns turns, client first. max_turns must be even and >= 2. A provider
// failure rethrows with the partial transcript attached.
struct DialogueError : Error {
  DialogueError(const std::string& what, DialogueTranscript partial)
      : Error(what), partial(std::move(partial)) {}
  DialogueTranscript partial;
};

DialogueTranscript simulate_dialogue(ModelProvider& counselor, ModelProvider& client,
                                     const CaseScenario& scenario, int max_turns,
                                     const PromptTemplates& templates,
                                     const std::string& counselor_model_label = "");

struct CriterionScore {
  std::string criterion;
  double score = 0.0;
  std::string rationale;
};

// All scores the judge produced for one dialogue plus the criteria it could
// not score. A scenario is complete when `missing` is empty.
struct ScenarioScores {
  std::string scenario_id;
  std::vector<CriterionScore> scores;
  std::vector<std::string> missing;
  std::vector<std::string> warnings;

  bool complete() const { return missing.empty(); }
};

// One judge call per criterion (or a single batched call). Unparseable
// replies mark the criterion missing instead of scoring it zero; scores
// outside the criterion's scale are clamped with a warning.
ScenarioScores judge_dialogue(ModelProvider& judge, const Constitution& constitution,
                              const DialogueTranscript& transcript,
                              const PromptTemplates& templates, bool batched = false);

struct BenchmarkReport {
  std::string model;
  // One entry per standard, rubric order.
  std::vector<std::pair<std::string, double>> criterion_means;
  double eshcc_r_subtotal = 0.0;
  double total_score = 0.0;
  int scenario_count = 0;  // scenarios with all criteria scored
  std::map<std::string, int> missing_counts;

  std::string render(const Constitution& constitution) const;
};

// Per-criterion means over scenarios (weighted per the rubric), total as the
// sum of the sixteen means, and the nine-criterion ESHCC-R subtotal. Throws
// InvalidStateError when no scenario is fully scored.
BenchmarkReport aggregate_report(std::string model, const Constitution& constitution,
                                 const std::vector<ScenarioScores>& scenarios);

enum class ExportFormat { Sft, Preference };

struct ExportStats {
  int records = 0;
  int skipped = 0;
  std::vector<std::string> warnings;
};

// SFT: one record from the best-q path, the query followed by each response
// along the path as an assistant message. Preference: per parent with at
// least two evaluated children, the best child against the worst strictly
// lower sibling.
ExportStats export_tree_dataset(const SearchTree& tree, ExportFormat format, std::ostream& out);

// One SFT record per transcript.
ExportStats export_transcript_dataset(const std::vector<DialogueTranscript>& transcripts,
                                      std::ostream& out);

}  // namespace mctsr
