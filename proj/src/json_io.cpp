#include "mctsr/json_io.hpp"

#include "mctsr/errors.hpp"

namespace mctsr {

using nlohmann::json;

namespace {

// Wraps json access so schema violations surface as ParseError.
template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json tree_to_json(const SearchTree& tree) {
  json nodes = json::array();
  for (NodeId id = 0; id < static_cast<NodeId>(tree.node_count()); ++id) {
    const SearchNode& n = tree.node(id);
    json node;
    node["id"] = n.id;
    node["kind"] = std::string(to_string(n.kind));
    node["origin"] = std::string(to_string(n.origin));
    node["parent"] = n.parent ? json(*n.parent) : json(nullptr);
    node["children"] = n.children;
    node["q"] = n.q ? json(*n.q) : json(nullptr);
    node["visits"] = n.visits;
    node["meta_prompt_id"] = n.meta_prompt_id;
    node["content"] = n.content;
    node["feedback_id"] = n.feedback ? json(*n.feedback) : json(nullptr);
    nodes.push_back(std::move(node));
  }
  return {{"version", 1},
          {"query", tree.query()},
          {"iteration", tree.iteration()},
          {"nodes", nodes}};
}

SearchTree tree_from_json(const json& doc) {
  return guarded("tree snapshot", [&] {
    std::vector<SearchNode> nodes;
    for (const auto& entry : doc.at("nodes")) {
      SearchNode n;
      n.id = entry.at("id").get<NodeId>();
      n.kind = node_kind_from_string(entry.at("kind").get<std::string>());
      n.origin = node_origin_from_string(entry.at("origin").get<std::string>());
      if (!entry.at("parent").is_null()) n.parent = entry.at("parent").get<NodeId>();
      n.children = entry.at("children").get<std::vector<NodeId>>();
      if (!entry.at("q").is_null()) n.q = entry.at("q").get<double>();
      n.visits = entry.at("visits").get<std::int64_t>();
      n.meta_prompt_id = entry.at("meta_prompt_id").get<MetaPromptId>();
      n.content = entry.at("content").get<std::string>();
      if (!entry.at("feedback_id").is_null()) n.feedback = entry.at("feedback_id").get<FeedbackId>();
      nodes.push_back(std::move(n));
    }
    std::vector<NodeId> initial;
    for (const auto& n : nodes)
      if (n.origin == NodeOrigin::Initial) initial.push_back(n.id);
    SearchTree tree =
        SearchTree::restore(doc.at("iteration").get<std::int64_t>(), std::move(nodes), initial);
    if (tree.query() != doc.at("query").get<std::string>())
      throw ParseError("tree snapshot: query does not match root content");
    return tree;
  });
}

json meta_state_to_json(const MetaPromptState& state) {
  json prompts = json::array();
  for (const auto& p : state.prompts()) {
    json entry;
    entry["id"] = p.id;
    entry["text"] = p.text;
    entry["created_at_iteration"] = p.created_at_iteration;
    entry["source"] = std::string(to_string(p.source));
    entry["trigger_feedback_id"] = p.trigger_feedback ? json(*p.trigger_feedback) : json(nullptr);
    entry["promoted"] = p.promoted;
    prompts.push_back(std::move(entry));
  }
  json events = json::array();
  for (const auto& e : state.promotions()) {
    events.push_back({{"iteration", e.iteration},
                      {"candidate_id", e.candidate_id},
                      {"q_new", e.q_new},
                      {"q_root", e.q_root},
                      {"promoted", e.promoted}});
  }
  return {{"version", 1},
          {"active_id", state.active_id()},
          {"prompts", prompts},
          {"promotions", events}};
}

MetaPromptState meta_state_from_json(const json& doc) {
  return guarded("meta-prompt snapshot", [&] {
    std::vector<MetaPromptEntry> prompts;
    for (const auto& entry : doc.at("prompts")) {
      MetaPromptEntry p;
      p.id = entry.at("id").get<MetaPromptId>();
      p.text = entry.at("text").get<std::string>();
      p.created_at_iteration = entry.at("created_at_iteration").get<std::int64_t>();
      p.source = prompt_source_from_string(entry.at("source").get<std::string>());
      if (!entry.at("trigger_feedback_id").is_null())
        p.trigger_feedback = entry.at("trigger_feedback_id").get<FeedbackId>();
      p.promoted = entry.at("promoted").get<bool>();
      prompts.push_back(std::move(p));
    }
    std::vector<PromotionEvent> events;
    for (const auto& entry : doc.at("promotions")) {
      PromotionEvent e;
      e.iteration = entry.at("iteration").get<std::int64_t>();
      e.candidate_id = entry.at("candidate_id").get<MetaPromptId>();
      e.q_new = entry.at("q_new").get<double>();
      e.q_root = entry.at("q_root").get<double>();
      e.promoted = entry.at("promoted").get<bool>();
      events.push_back(e);
    }
    return MetaPromptState::restore(doc.at("active_id").get<MetaPromptId>(), std::move(prompts),
                                    std::move(events));
  });
}

json feedback_to_json(const EvaluationFeedback& feedback) {
  return {{"critique", feedback.critique},
          {"suggestions", feedback.suggestions},
          {"score_samples", feedback.score_samples},
          {"aggregated_q", feedback.aggregated_q},
          {"standard_notes", feedback.standard_notes}};
}

EvaluationFeedback feedback_from_json(const json& doc) {
  return guarded("feedback", [&] {
    EvaluationFeedback f;
    f.critique = doc.at("critique").get<std::string>();
    f.suggestions = doc.at("suggestions").get<std::vector<std::string>>();
    f.score_samples = doc.at("score_samples").get<std::vector<double>>();
    f.aggregated_q = doc.at("aggregated_q").get<double>();
    f.standard_notes = doc.at("standard_notes").get<std::map<std::string, std::string>>();
    return f;
  });
}

json feedbacks_to_json(const std::vector<EvaluationFeedback>& feedbacks) {
  json arr = json::array();
  for (const auto& f : feedbacks) arr.push_back(feedback_to_json(f));
  return {{"version", 1}, {"feedbacks", arr}};
}

std::vector<EvaluationFeedback> feedbacks_from_json(const json& doc) {
  return guarded("feedbacks", [&] {
    std::vector<EvaluationFeedback> out;
    for (const auto& entry : doc.at("feedbacks")) out.push_back(feedback_from_json(entry));
    return out;
  });
}

json report_to_json(const BenchmarkReport& report) {
  json means = json::array();
  for (const auto& [key, mean] : report.criterion_means)
    means.push_back({{"criterion", key}, {"mean", mean}});
  return {{"version", 1},
          {"model", report.model},
          {"criterion_means", means},
          {"eshcc_r_subtotal", report.eshcc_r_subtotal},
          {"total_score", report.total_score},
          {"scenario_count", report.scenario_count},
          {"missing_counts", report.missing_counts}};
}

BenchmarkReport report_from_json(const json& doc) {
  return guarded("report", [&] {
    BenchmarkReport r;
    r.model = doc.at("model").get<std::string>();
    for (const auto& entry : doc.at("criterion_means"))
      r.criterion_means.emplace_back(entry.at("criterion").get<std::string>(),
                                     entry.at("mean").get<double>());
    r.eshcc_r_subtotal = doc.at("eshcc_r_subtotal").get<double>();
    r.total_score = doc.at("total_score").get<double>();
    r.scenario_count = doc.at("scenario_count").get<int>();
    r.missing_counts = doc.at("missing_counts").get<std::map<std::string, int>>();
    return r;
  });
}

json transcript_to_json(const DialogueTranscript& transcript) {
  json turns = json::array();
  for (const auto& t : transcript.turns)
    turns.push_back({{"speaker", std::string(to_string(t.speaker))}, {"content", t.content}});
  return {{"scenario_id", transcript.scenario_id},
          {"turns", turns},
          {"counselor_model", transcript.counselor_model}};
}

DialogueTranscript transcript_from_json(const json& doc) {
  return guarded("transcript", [&] {
    DialogueTranscript t;
    t.scenario_id = doc.at("scenario_id").get<std::string>();
    t.counselor_model = doc.at("counselor_model").get<std::string>();
    for (const auto& turn : doc.at("turns"))
      t.turns.push_back({speaker_from_string(turn.at("speaker").get<std::string>()),
                         turn.at("content").get<std::string>()});
    return t;
  });
}

json constitution_to_json(const Constitution& constitution) {
  json standards = json::array();
  for (const auto& s : constitution.standards) {
    standards.push_back({{"key", s.key},
                         {"title", s.title},
                         {"description", s.description},
                         {"scale_max", s.scale_max},
                         {"weight", s.weight}});
  }
  return {{"version", 1}, {"standards", standards}};
}

Constitution constitution_from_json(const json& doc) {
  return guarded("constitution", [&] {
    Constitution c;
    for (const auto& entry : doc.at("standards")) {
      Standard s;
      s.key = entry.at("key").get<std::string>();
      s.title = entry.at("title").get<std::string>();
      s.description = entry.at("description").get<std::string>();
      s.scale_max = entry.value("scale_max", 5);
      s.weight = entry.value("weight", 1.0);
      c.standards.push_back(std::move(s));
    }
    c.validate();
    return c;
  });
}

json scenario_library_to_json(const ScenarioLibrary& lib) {
  json scenarios = json::array();
  for (const auto& s : lib.scenarios)
    scenarios.push_back({{"id", s.id}, {"category", s.category}, {"outline", s.outline}});
  return {{"version", 1}, {"scenarios", scenarios}};
}

ScenarioLibrary scenario_library_from_json(const json& doc) {
  return guarded("scenario library", [&] {
    ScenarioLibrary lib;
    for (const auto& entry : doc.at("scenarios")) {
      CaseScenario s;
      s.id = entry.at("id").get<std::string>();
      s.category = entry.at("category").get<std::string>();
      s.outline = entry.at("outline").get<std::string>();
      lib.scenarios.push_back(std::move(s));
    }
    lib.validate();
    return lib;
  });
}

json search_config_to_json(const SearchConfig& config) {
  json doc;
  doc["c"] = config.c;
  doc["epsilon"] = config.epsilon;
  doc["m_initial"] = config.m_initial;
  doc["eval_samples"] = config.eval_samples;
  doc["max_iterations"] = config.max_iterations;
  doc["max_depth"] = config.max_depth ? json(*config.max_depth) : json(nullptr);
  doc["quality_threshold"] =
      config.quality_threshold ? json(*config.quality_threshold) : json(nullptr);
  doc["stagnation_window"] =
      config.stagnation_window ? json(*config.stagnation_window) : json(nullptr);
  doc["seed"] = config.seed;
  doc["strict_promotion"] = config.strict_promotion;
  return doc;
}

SearchConfig search_config_from_json(const json& doc) {
  return guarded("search config", [&] {
    SearchConfig config;
    config.c = doc.value("c", config.c);
    config.epsilon = doc.value("epsilon", config.epsilon);
    config.m_initial = doc.value("m_initial", config.m_initial);
    config.eval_samples = doc.value("eval_samples", config.eval_samples);
    config.max_iterations = doc.value("max_iterations", config.max_iterations);
    if (doc.contains("max_depth") && !doc["max_depth"].is_null())
      config.max_depth = doc["max_depth"].get<int>();
    if (doc.contains("quality_threshold") && !doc["quality_threshold"].is_null())
      config.quality_threshold = doc["quality_threshold"].get<double>();
    if (doc.contains("stagnation_window") && !doc["stagnation_window"].is_null())
      config.stagnation_window = doc["stagnation_window"].get<int>();
    config.seed = doc.value("seed", config.seed);
    config.strict_promotion = doc.value("strict_promotion", config.strict_promotion);
    config.validate();
    return config;
  });
}

json provider_config_to_json(const ProviderConfig& config) {
  return {{"base_url", config.base_url},
          {"model_name", config.model_name},
          {"api_key_env", config.api_key_env},
          {"temperature", config.temperature},
          {"eval_temperature", config.eval_temperature},
          {"max_output_tokens", config.max_output_tokens},
          {"request_timeout_ms", config.request_timeout_ms},
          {"max_retries", config.max_retries},
          {"retry_backoff_ms", config.retry_backoff_ms},
          {"max_concurrent", config.max_concurrent}};
}

ProviderConfig provider_config_from_json(const json& doc) {
  return guarded("provider config", [&] {
    ProviderConfig config;
    config.base_url = doc.value("base_url", config.base_url);
    config.model_name = doc.value("model_name", config.model_name);
    config.api_key_env = doc.value("api_key_env", config.api_key_env);
    config.temperature = doc.value("temperature", config.temperature);
    config.eval_temperature = doc.value("eval_temperature", config.eval_temperature);
    config.max_output_tokens = doc.value("max_output_tokens", config.max_output_tokens);
    config.request_timeout_ms = doc.value("request_timeout_ms", config.request_timeout_ms);
    config.max_retries = doc.value("max_retries", config.max_retries);
    if (doc.contains("retry_backoff_ms"))
      config.retry_backoff_ms = doc["retry_backoff_ms"].get<std::vector<std::int64_t>>();
    config.max_concurrent = doc.value("max_concurrent", config.max_concurrent);
    return config;
  });
}

json script_to_json(const ScriptedScript& script) {
  json rules = json::array();
  for (const auto& r : script.rules) {
    json rule;
    if (r.kind) rule["kind"] = std::string(to_string(*r.kind));
    if (r.contains) rule["contains"] = *r.contains;
    rule["reply"] = r.reply;
    if (r.uses >= 0) rule["uses"] = r.uses;
    rules.push_back(std::move(rule));
  }
  return {{"mode", script.mode == ScriptMode::Sequential ? "sequential" : "matched"},
          {"rules", rules}};
}

ScriptedScript script_from_json(const json& doc) {
  return guarded("script", [&] {
    ScriptedScript script;
    const std::string mode = doc.value("mode", "sequential");
    if (mode == "sequential")
      script.mode = ScriptMode::Sequential;
    else if (mode == "matched")
      script.mode = ScriptMode::Matched;
    else
      throw ParseError("script: unknown mode " + mode);
    for (const auto& entry : doc.at("rules")) {
      ScriptRule rule;
      if (entry.contains("kind"))
        rule.kind = request_kind_from_string(entry["kind"].get<std::string>());
      if (entry.contains("contains")) rule.contains = entry["contains"].get<std::string>();
      if (entry.contains("reply_json"))
        rule.reply = entry["reply_json"].dump();
      else
        rule.reply = entry.at("reply").get<std::string>();
      rule.uses = entry.value("uses", static_cast<std::int64_t>(-1));
      script.rules.push_back(std::move(rule));
    }
    return script;
  });
}

json usage_to_json(const UsageLedger& ledger) {
  json entries = json::array();
  for (const auto& e : ledger.entries()) {
    json entry;
    entry["kind"] = std::string(to_string(e.kind));
    entry["prompt_tokens"] = e.prompt_tokens ? json(*e.prompt_tokens) : json(nullptr);
    entry["completion_tokens"] = e.completion_tokens ? json(*e.completion_tokens) : json(nullptr);
    entry["latency_ms"] = e.latency_ms;
    entry["attempts"] = e.attempts;
    entries.push_back(std::move(entry));
  }
  return {{"version", 1}, {"calls", entries}};
}

}  // namespace mctsr
