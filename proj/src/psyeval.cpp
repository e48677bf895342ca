#include "mctsr/psyeval.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

#include "mctsr/errors.hpp"

namespace mctsr {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 16> kCategories = {
    "Academic Pressure",
    "Career Stress",
    "Family Relationships",
    "Intimate Relationships",
    "Social Anxiety",
    "Peer Relationships",
    "Depression",
    "Anxiety",
    "Emotional Management",
    "Trauma",
    "Self-Perception",
    "Health Anxiety",
    "Body Image Anxiety",
    "Addiction",
    "Grief and Loss",
    "General Mental Health Concerns",
};

}  // namespace

std::span<const std::string_view> scenario_categories() { return kCategories; }

void ScenarioLibrary::validate() const {
  for (const auto& s : scenarios) {
    if (s.id.empty() || s.outline.empty())
      throw ConfigError("scenario library: entry with empty id or outline");
    if (std::find(kCategories.begin(), kCategories.end(), s.category) == kCategories.end())
      throw ConfigError("scenario library: unknown category '" + s.category + "'");
  }
  for (std::size_t i = 0; i < scenarios.size(); ++i)
    for (std::size_t j = i + 1; j < scenarios.size(); ++j)
      if (scenarios[i].id == scenarios[j].id)
        throw ConfigError("scenario library: duplicate id " + scenarios[i].id);
}

std::vector<CaseScenario> ScenarioLibrary::filtered(
    const std::optional<std::string>& category) const {
  if (!category) return scenarios;
  std::vector<CaseScenario> out;
  for (const auto& s : scenarios)
    if (s.category == *category) out.push_back(s);
  return out;
}

std::string_view to_string(Speaker s) { return s == Speaker::Client ? "client" : "counselor"; }

Speaker speaker_from_string(std::string_view s) {
  if (s == "client") return Speaker::Client;
  if (s == "counselor") return Speaker::Counselor;
  throw ParseError("unknown speaker: " + std::string(s));
}

void DialogueTranscript::validate() const {
  for (std::size_t i = 0; i < turns.size(); ++i) {
    const Speaker expected = (i % 2 == 0) ? Speaker::Client : Speaker::Counselor;
    if (turns[i].speaker != expected)
      throw InvalidStateError("transcript: speakers must alternate starting with the client");
    if (turns[i].content.empty()) throw InvalidStateError("transcript: empty turn");
  }
}

std::string DialogueTranscript::render() const {
  std::string out;
  for (const auto& t : turns) {
    out += t.speaker == Speaker::Client ? "Client: " : "Counselor: ";
    out += t.content;
    out += '\n';
  }
  return out;
}

DialogueTranscript simulate_dialogue(ModelProvider& counselor, ModelProvider& client,
                                     const CaseScenario& scenario, int max_turns,
                                     const PromptTemplates& templates,
                                     const std::string& counselor_model_label) {
  if (max_turns < 2 || max_turns % 2 != 0)
    throw InvalidArgumentError("simulate_dialogue: max_turns must be even and >= 2");

  DialogueTranscript transcript;
  transcript.scenario_id = scenario.id;
  transcript.counselor_model = counselor_model_label;

  const std::string client_system =
      render_template(templates.client_system, {{"outline", scenario.outline}});

  for (int turn = 0; turn < max_turns; ++turn) {
    const bool client_turn = turn % 2 == 0;
    std::vector<ChatMessage> messages;
    messages.push_back(
        {Role::System, client_turn ? client_system : templates.counselor_system});
    // Each side sees the other's turns as user messages and its own as
    // assistant messages.
    for (const auto& t : transcript.turns) {
      const bool own = (t.speaker == Speaker::Client) == client_turn;
      messages.push_back({own ? Role::Assistant : Role::User, t.content});
    }
    if (messages.size() == 1)
      messages.push_back({Role::User, "Begin the conversation."});

    std::string content;
    try {
      content = (client_turn ? client : counselor).complete(messages, RequestKind::Generate);
    } catch (const Error& e) {
      throw DialogueError("simulate_dialogue: turn " + std::to_string(turn + 1) +
                              " failed: " + e.what(),
                          std::move(transcript));
    }
    if (content.empty())
      throw DialogueError("simulate_dialogue: empty turn " + std::to_string(turn + 1),
                          std::move(transcript));
    transcript.turns.push_back({client_turn ? Speaker::Client : Speaker::Counselor,
                                std::move(content)});
  }
  transcript.validate();
  return transcript;
}

namespace {

std::optional<CriterionScore> parse_judge_reply(const std::string& raw, const Standard& standard,
                                                std::vector<std::string>& warnings) {
  json doc;
  try {
    const auto first = raw.find('{');
    const auto last = raw.rfind('}');
    if (first == std::string::npos || last == std::string::npos || last < first) return {};
    doc = json::parse(raw.substr(first, last - first + 1));
  } catch (const json::exception&) {
    return {};
  }
  if (!doc.is_object() || !doc.contains("score") || !doc["score"].is_number()) return {};

  CriterionScore score;
  score.criterion = standard.key;
  score.score = doc["score"].get<double>();
  score.rationale = doc.value("rationale", "");
  if (score.score < 0.0 || score.score > standard.scale_max) {
    warnings.push_back(standard.key + ": score " + std::to_string(score.score) +
                       " clamped to scale 0-" + std::to_string(standard.scale_max));
    score.score = std::clamp(score.score, 0.0, static_cast<double>(standard.scale_max));
  }
  return score;
}

}  // namespace

ScenarioScores judge_dialogue(ModelProvider& judge, const Constitution& constitution,
                              const DialogueTranscript& transcript,
                              const PromptTemplates& templates, bool batched) {
  if (transcript.turns.empty())
    throw InvalidArgumentError("judge_dialogue: transcript must be non-empty");

  ScenarioScores result;
  result.scenario_id = transcript.scenario_id;
  const std::string rendered = transcript.render();

  if (!batched) {
    for (const auto& standard : constitution.standards) {
      std::vector<ChatMessage> messages;
      messages.push_back({Role::User,
                          render_template(templates.judge_user,
                                          {{"title", standard.title},
                                           {"description", standard.description},
                                           {"scale_max", std::to_string(standard.scale_max)},
                                           {"transcript", rendered}})});
      std::optional<CriterionScore> score;
      try {
        const std::string raw = judge.complete(messages, RequestKind::Evaluate);
        score = parse_judge_reply(raw, standard, result.warnings);
      } catch (const ProviderError& e) {
        result.warnings.push_back(standard.key + ": " + e.what());
      }
      if (score)
        result.scores.push_back(std::move(*score));
      else
        result.missing.push_back(standard.key);
    }
    return result;
  }

  std::string criteria;
  for (const auto& s : constitution.standards) {
    criteria += "- " + s.key + " (" + s.title + ", 0-" + std::to_string(s.scale_max) +
                "): " + s.description + '\n';
  }
  std::vector<ChatMessage> messages;
  messages.push_back({Role::User, render_template(templates.judge_batched_user,
                                                  {{"criteria", criteria},
                                                   {"transcript", rendered}})});
  json doc;
  try {
    const std::string raw = judge.complete(messages, RequestKind::Evaluate);
    const auto first = raw.find('{');
    const auto last = raw.rfind('}');
    if (first == std::string::npos || last < first) throw ParseError("no JSON object");
    doc = json::parse(raw.substr(first, last - first + 1));
  } catch (const std::exception& e) {
    result.warnings.push_back(std::string("batched judge reply unusable: ") + e.what());
    for (const auto& s : constitution.standards) result.missing.push_back(s.key);
    return result;
  }

  std::map<std::string, json> by_key;
  if (doc.contains("scores") && doc["scores"].is_array()) {
    for (const auto& entry : doc["scores"]) {
      if (entry.is_object() && entry.contains("criterion") && entry["criterion"].is_string())
        by_key[entry["criterion"].get<std::string>()] = entry;
    }
  }
  for (const auto& standard : constitution.standards) {
    auto it = by_key.find(standard.key);
    std::optional<CriterionScore> score;
    if (it != by_key.end())
      score = parse_judge_reply(it->second.dump(), standard, result.warnings);
    if (score)
      result.scores.push_back(std::move(*score));
    else
      result.missing.push_back(standard.key);
  }
  return result;
}

BenchmarkReport aggregate_report(std::string model, const Constitution& constitution,
                                 const std::vector<ScenarioScores>& scenarios) {
  BenchmarkReport report;
  report.model = std::move(model);

  for (const auto& scenario : scenarios) {
    if (scenario.complete()) ++report.scenario_count;
    for (const auto& key : scenario.missing) ++report.missing_counts[key];
  }
  if (report.scenario_count == 0)
    throw InvalidStateError("aggregate_report: no fully scored scenario");

  for (const auto& standard : constitution.standards) {
    double sum = 0.0;
    int n = 0;
    for (const auto& scenario : scenarios) {
      for (const auto& score : scenario.scores) {
        if (score.criterion == standard.key) {
          sum += score.score;
          ++n;
          break;
        }
      }
    }
    const double mean = n > 0 ? standard.weight * sum / n : 0.0;
    report.criterion_means.emplace_back(standard.key, mean);
    report.total_score += mean;
  }

  const auto eshcc = eshcc_r_keys();
  for (const auto& [key, mean] : report.criterion_means) {
    if (std::find(eshcc.begin(), eshcc.end(), key) != eshcc.end())
      report.eshcc_r_subtotal += mean;
  }
  return report;
}

std::string BenchmarkReport::render(const Constitution& constitution) const {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);

  auto mean_of = [&](std::string_view key) {
    for (const auto& [k, v] : criterion_means)
      if (k == key) return v;
    return 0.0;
  };

  out << "Model: " << model << "  (scenarios: " << scenario_count << ")\n";
  out << "Total Score: " << total_score << "   ESHCC-R: " << eshcc_r_subtotal
      << "   DLC: " << mean_of("dialogical_logical_consistency")
      << "   CC: " << mean_of("conversational_continuity")
      << "   RH: " << mean_of("resistance_handling") << "   Sum.: " << mean_of("summarizing")
      << "   EPG: " << mean_of("ethics_prosocial_guidance")
      << "   DPPA: " << mean_of("dialogue_pacing_process_attunement") << "\n\n";

  for (const auto& standard : constitution.standards) {
    out << "  " << standard.title << " (0-" << standard.scale_max
        << "): " << mean_of(standard.key);
    auto it = missing_counts.find(standard.key);
    if (it != missing_counts.end()) out << "   [missing in " << it->second << " scenario(s)]";
    out << '\n';
  }
  return out.str();
}

namespace {

json sft_record(const std::string& query, const std::vector<std::string>& responses) {
  json messages = json::array();
  messages.push_back({{"role", "user"}, {"content", query}});
  for (const auto& r : responses) messages.push_back({{"role", "assistant"}, {"content", r}});
  return {{"messages", messages}};
}

}  // namespace

ExportStats export_tree_dataset(const SearchTree& tree, ExportFormat format, std::ostream& out) {
  ExportStats stats;

  if (format == ExportFormat::Sft) {
    const NodeId best = best_answer(tree);
    std::vector<std::string> responses;
    for (NodeId id = best; id != SearchTree::kRoot; id = *tree.node(id).parent)
      responses.push_back(tree.node(id).content);
    std::reverse(responses.begin(), responses.end());
    out << sft_record(tree.query(), responses).dump() << '\n';
    stats.records = 1;
    return stats;
  }

  for (NodeId id = 0; id < static_cast<NodeId>(tree.node_count()); ++id) {
    const SearchNode& parent = tree.node(id);
    if (parent.children.empty()) continue;
    if (parent.children.size() == 1) {
      ++stats.skipped;
      stats.warnings.push_back("node " + std::to_string(id) + ": single child, no pair");
      continue;
    }
    const SearchNode* chosen = nullptr;
    const SearchNode* rejected = nullptr;
    for (NodeId c : parent.children) {
      const SearchNode& child = tree.node(c);
      if (!child.evaluated()) continue;
      if (!chosen || *child.q > *chosen->q) chosen = &child;
      if (!rejected || *child.q < *rejected->q) rejected = &child;
    }
    if (!chosen || !rejected || !(*rejected->q < *chosen->q)) {
      ++stats.skipped;
      stats.warnings.push_back("node " + std::to_string(id) + ": no strictly lower sibling");
      continue;
    }
    out << json{{"prompt", tree.query()},
                {"chosen", chosen->content},
                {"rejected", rejected->content}}
               .dump()
        << '\n';
    ++stats.records;
  }
  return stats;
}

ExportStats export_transcript_dataset(const std::vector<DialogueTranscript>& transcripts,
                                      std::ostream& out) {
  ExportStats stats;
  for (const auto& transcript : transcripts) {
    json messages = json::array();
    for (const auto& t : transcript.turns) {
      messages.push_back({{"role", t.speaker == Speaker::Client ? "user" : "assistant"},
                          {"content", t.content}});
    }
    out << json{{"messages", messages}}.dump() << '\n';
    ++stats.records;
  }
  return stats;
}

}  // namespace mctsr
