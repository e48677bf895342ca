#pragma once

#include <json.hpp>

#include "mctsr/evaluation.hpp"
#include "mctsr/meta_prompt.hpp"
#include "mctsr/provider.hpp"
#include "mctsr/psyeval.hpp"
#include "mctsr/tree.hpp"

namespace mctsr {

// Snapshot schema: {version, query, iteration, nodes:[{id, kind, origin,
// parent, children, q, visits, meta_prompt_id, content, feedback_id}]}.
// Loading a saved tree reproduces every field exactly.
nlohmann::json tree_to_json(const SearchTree& tree);
SearchTree tree_from_json(const nlohmann::json& doc);

nlohmann::json meta_state_to_json(const MetaPromptState& state);
MetaPromptState meta_state_from_json(const nlohmann::json& doc);

nlohmann::json feedback_to_json(const EvaluationFeedback& feedback);
EvaluationFeedback feedback_from_json(const nlohmann::json& doc);
nlohmann::json feedbacks_to_json(const std::vector<EvaluationFeedback>& feedbacks);
std::vector<EvaluationFeedback> feedbacks_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const BenchmarkReport& report);
BenchmarkReport report_from_json(const nlohmann::json& doc);

nlohmann::json transcript_to_json(const DialogueTranscript& transcript);
DialogueTranscript transcript_from_json(const nlohmann::json& doc);

nlohmann::json constitution_to_json(const Constitution& constitution);
Constitution constitution_from_json(const nlohmann::json& doc);

nlohmann::json scenario_library_to_json(const ScenarioLibrary& lib);
ScenarioLibrary scenario_library_from_json(const nlohmann::json& doc);

nlohmann::json search_config_to_json(const SearchConfig& config);
SearchConfig search_config_from_json(const nlohmann::json& doc);

nlohmann::json provider_config_to_json(const ProviderConfig& config);
ProviderConfig provider_config_from_json(const nlohmann::json& doc);

nlohmann::json script_to_json(const ScriptedScript& script);
ScriptedScript script_from_json(const nlohmann::json& doc);

nlohmann::json usage_to_json(const UsageLedger& ledger);

}  // namespace mctsr
