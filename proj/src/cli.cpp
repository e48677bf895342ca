#include "mctsr/cli.hpp"

#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "mctsr/errors.hpp"
#include "mctsr/json_io.hpp"
#include "mctsr/orchestrator.hpp"
#include "mctsr/persistence.hpp"
#include "mctsr/psyeval.hpp"
#include "mctsr/replay.hpp"

namespace mctsr::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& config_dir, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : config_dir / path;
}

// Provider block of a config: {"type": "scripted"|"http",
//   "scripted": {"script": path} or {"inline": {...}}, "http": {...}}.
struct ProviderSpec {
  std::string type = "scripted";
  std::optional<ScriptedScript> script;
  std::optional<ProviderConfig> http;

  static ProviderSpec parse(const json& doc, const fs::path& config_dir,
                            const std::optional<std::string>& type_override) {
    ProviderSpec spec;
    spec.type = type_override.value_or(doc.value("type", "scripted"));
    if (spec.type != "scripted" && spec.type != "http")
      throw ConfigError("provider type must be 'scripted' or 'http'");
    if (doc.contains("scripted")) {
      const json& s = doc["scripted"];
      if (s.contains("inline"))
        spec.script = script_from_json(s["inline"]);
      else if (s.contains("script"))
        spec.script = script_from_json(load_json(resolve(config_dir, s["script"])));
      else
        throw ConfigError("scripted provider needs 'script' or 'inline'");
    }
    if (doc.contains("http")) spec.http = provider_config_from_json(doc["http"]);
    if (spec.type == "scripted" && !spec.script)
      throw ConfigError("provider type is 'scripted' but no script is configured");
    if (spec.type == "http") {
      if (!spec.http) throw ConfigError("provider type is 'http' but no http block is configured");
      spec.http->validate();
    }
    return spec;
  }

  bool deterministic() const { return type == "scripted"; }

  // Scripted providers are stateful; every search gets a fresh one.
  std::unique_ptr<ModelProvider> make() const {
    if (type == "scripted") return std::make_unique<ScriptedProvider>(*script);
    return std::make_unique<HttpProvider>(*http);
  }
};

PromptTemplates load_templates(const json& doc, const fs::path& config_dir) {
  PromptTemplates templates = PromptTemplates::defaults();
  if (!doc.contains("templates")) return templates;
  const json& t = doc["templates"];
  auto assign = [&](const char* name, std::string& field) {
    if (t.contains(name)) field = read_file(resolve(config_dir, t[name].get<std::string>()));
  };
  assign("generate_user", templates.generate_user);
  assign("refine_user", templates.refine_user);
  assign("evaluate_system", templates.evaluate_system);
  assign("evaluate_user", templates.evaluate_user);
  assign("synthesize_system", templates.synthesize_system);
  assign("synthesize_user", templates.synthesize_user);
  assign("client_system", templates.client_system);
  assign("counselor_system", templates.counselor_system);
  assign("judge_user", templates.judge_user);
  assign("judge_batched_user", templates.judge_batched_user);
  return templates;
}

Constitution load_constitution_from(const json& doc, const fs::path& config_dir) {
  if (doc.contains("constitution"))
    return constitution_from_json(load_json(resolve(config_dir, doc["constitution"])));
  return default_constitution();
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  json doc;
  fs::path config_dir;
  std::vector<std::string> queries;
  std::string m0;
  SearchConfig config;
  ProviderSpec provider_spec;
  Constitution constitution;
  PromptTemplates templates;
  fs::path out_dir;
  try {
    doc = load_json(options.config_path);
    config_dir = fs::path(options.config_path).parent_path();

    if (doc.contains("queries"))
      queries = doc["queries"].get<std::vector<std::string>>();
    else if (doc.contains("queries_file")) {
      std::ifstream in(resolve(config_dir, doc["queries_file"]));
      if (!in) throw ConfigError("cannot open queries_file");
      std::string line;
      while (std::getline(in, line))
        if (!trim(line).empty()) queries.push_back(line);
    }
    if (queries.empty()) throw ConfigError("config lists no queries");

    if (doc.contains("meta_prompt"))
      m0 = doc["meta_prompt"].get<std::string>();
    else if (doc.contains("meta_prompt_file"))
      m0 = read_file(resolve(config_dir, doc["meta_prompt_file"]));
    else
      m0 = default_meta_prompt();

    config = doc.contains("search") ? search_config_from_json(doc["search"]) : SearchConfig{};
    if (options.seed) config.seed = *options.seed;
    config.validate();

    provider_spec = ProviderSpec::parse(doc.value("provider", json::object()), config_dir,
                                        options.provider);
    constitution = load_constitution_from(doc, config_dir);
    templates = load_templates(doc, config_dir);

    out_dir = options.out_dir ? fs::path(*options.out_dir)
                              : resolve(config_dir, doc.value("out_dir", "runs"));
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }

  int failures = 0;
  for (const auto& query : queries) {
    SystemClock system_clock;
    LogicalClock logical_clock;
    Clock& clock = provider_spec.deterministic() ? static_cast<Clock&>(logical_clock)
                                                 : static_cast<Clock&>(system_clock);
    const fs::path run_dir = make_run_dir(out_dir, query, clock);
    auto provider = provider_spec.make();
    try {
      FileTrace trace(run_dir / "trace.jsonl");
      SearchEnv env{*provider, constitution, templates, &trace, &clock};
      SearchOutcome outcome = run_search(env, query, m0, config);

      save_json(run_dir / "snapshot.json", tree_to_json(outcome.tree));
      save_json(run_dir / "meta_prompts.json", meta_state_to_json(outcome.meta));
      save_json(run_dir / "feedbacks.json", feedbacks_to_json(outcome.feedbacks));
      save_json(run_dir / "outcome.json",
                {{"best_node", outcome.best_node},
                 {"best_q", outcome.best_q},
                 {"termination", std::string(to_string(outcome.termination))},
                 {"iterations_run", outcome.iterations_run},
                 {"best_q_history", outcome.best_q_history}});
      save_json(run_dir / "usage.json", usage_to_json(provider->ledger()));
      out << run_dir.string() << ": best_q=" << outcome.best_q << " after "
          << outcome.iterations_run << " iteration(s), "
          << to_string(outcome.termination) << "\n";
    } catch (const std::exception& e) {
      ++failures;
      err << run_dir.string() << ": search failed: " << e.what() << "\n";
      try {
        save_json(run_dir / "failure.json", {{"query", query}, {"error", e.what()}});
        save_json(run_dir / "usage.json", usage_to_json(provider->ledger()));
      } catch (const std::exception&) {
      }
    }
  }
  if (failures > 0) {
    err << failures << " of " << queries.size() << " queries failed\n";
    return 1;
  }
  return 0;
}

int cmd_replay(const ReplayOptions& options, std::ostream& out, std::ostream& err) {
  fs::path trace_path(options.path);
  fs::path snapshot_path;
  if (fs::is_directory(trace_path)) {
    snapshot_path = trace_path / "snapshot.json";
    trace_path /= "trace.jsonl";
  } else {
    snapshot_path = trace_path.parent_path() / "snapshot.json";
  }

  std::vector<TraceEvent> events;
  std::optional<json> snapshot;
  try {
    events = read_trace(trace_path);
    if (fs::exists(snapshot_path)) snapshot = load_json(snapshot_path);
  } catch (const std::exception& e) {
    err << "replay: " << e.what() << "\n";
    return 2;
  }

  ReplayReport report;
  try {
    report = verify_trace(events, snapshot ? &*snapshot : nullptr);
  } catch (const std::exception& e) {
    err << "replay: " << e.what() << "\n";
    return 2;
  }
  if (report.verified) {
    out << "verified\n";
    return 0;
  }
  out << "divergence";
  if (report.divergence_iteration) out << " at iteration " << *report.divergence_iteration;
  out << ": " << report.detail << "\n";
  return 1;
}

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err) {
  json doc;
  fs::path config_dir;
  std::string model_label;
  ScenarioLibrary library;
  Constitution constitution;
  PromptTemplates templates;
  ProviderSpec counselor_spec, client_spec, judge_spec;
  std::optional<std::string> category;
  int max_turns = 4;
  bool judge_batched = false;
  fs::path out_dir;
  try {
    doc = load_json(options.config_path);
    config_dir = fs::path(options.config_path).parent_path();
    model_label = doc.value("model_label", "unnamed-model");
    library = doc.contains("scenarios")
                  ? scenario_library_from_json(load_json(resolve(config_dir, doc["scenarios"])))
                  : default_scenario_library();
    constitution = load_constitution_from(doc, config_dir);
    templates = load_templates(doc, config_dir);
    counselor_spec = ProviderSpec::parse(doc.at("counselor_provider"), config_dir,
                                         options.provider);
    client_spec = ProviderSpec::parse(doc.at("client_provider"), config_dir, options.provider);
    judge_spec = ProviderSpec::parse(doc.at("judge_provider"), config_dir, options.provider);
    if (options.category)
      category = *options.category;
    else if (doc.contains("category"))
      category = doc["category"].get<std::string>();
    max_turns = doc.value("max_turns", 20);
    judge_batched = doc.value("judge_batched", false);
    out_dir = options.out_dir ? fs::path(*options.out_dir)
                              : resolve(config_dir, doc.value("out_dir", "evals"));
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }

  const auto scenarios = library.filtered(category);
  if (scenarios.empty()) {
    err << "no scenarios match the requested category\n";
    return 2;
  }

  SystemClock system_clock;
  LogicalClock logical_clock;
  const bool deterministic = counselor_spec.deterministic() && client_spec.deterministic() &&
                             judge_spec.deterministic();
  Clock& clock = deterministic ? static_cast<Clock&>(logical_clock)
                               : static_cast<Clock&>(system_clock);
  const fs::path run_dir = make_run_dir(out_dir, model_label, clock);

  int failures = 0;
  int missing_cells = 0;
  std::vector<ScenarioScores> scored;
  std::ostringstream transcripts_out;
  // One judge for the whole run; the dialogue providers restart per scenario
  // so sequential scripts describe a single dialogue.
  auto judge = judge_spec.make();
  for (const auto& scenario : scenarios) {
    auto counselor = counselor_spec.make();
    auto client = client_spec.make();
    try {
      const DialogueTranscript transcript =
          simulate_dialogue(*counselor, *client, scenario, max_turns, templates, model_label);
      transcripts_out << transcript_to_json(transcript).dump() << "\n";
      ScenarioScores scores =
          judge_dialogue(*judge, constitution, transcript, templates, judge_batched);
      missing_cells += static_cast<int>(scores.missing.size());
      scored.push_back(std::move(scores));
    } catch (const std::exception& e) {
      ++failures;
      err << scenario.id << ": " << e.what() << "\n";
    }
  }

  atomic_write_file(run_dir / "transcripts.jsonl", transcripts_out.str());

  try {
    const BenchmarkReport report = aggregate_report(model_label, constitution, scored);
    save_json(run_dir / "report.json", report_to_json(report));
    atomic_write_file(run_dir / "report.txt", report.render(constitution));
    out << report.render(constitution);
    out << "written to " << run_dir.string() << "\n";
  } catch (const std::exception& e) {
    err << "aggregation failed: " << e.what() << "\n";
    return 1;
  }
  return (failures > 0 || missing_cells > 0) ? 1 : 0;
}

int cmd_export(const ExportOptions& options, std::ostream& out, std::ostream& err) {
  ExportFormat format;
  if (options.format == "sft")
    format = ExportFormat::Sft;
  else if (options.format == "preference")
    format = ExportFormat::Preference;
  else {
    err << "format must be 'sft' or 'preference'\n";
    return 2;
  }

  fs::path input(options.input_path);
  if (fs::is_directory(input)) {
    if (fs::exists(input / "snapshot.json"))
      input /= "snapshot.json";
    else if (fs::exists(input / "transcripts.jsonl"))
      input /= "transcripts.jsonl";
    else {
      err << "no snapshot.json or transcripts.jsonl in " << input.string() << "\n";
      return 2;
    }
  }

  std::ostringstream dataset;
  ExportStats stats;
  try {
    if (input.extension() == ".jsonl") {
      if (format != ExportFormat::Sft) {
        err << "preference export needs a tree snapshot, not transcripts\n";
        return 2;
      }
      std::ifstream in(input);
      if (!in) throw IoError("cannot open " + input.string());
      std::vector<DialogueTranscript> transcripts;
      std::string line;
      while (std::getline(in, line))
        if (!trim(line).empty()) transcripts.push_back(transcript_from_json(json::parse(line)));
      stats = export_transcript_dataset(transcripts, dataset);
    } else {
      const SearchTree tree = tree_from_json(load_json(input));
      stats = export_tree_dataset(tree, format, dataset);
    }
    atomic_write_file(options.out_path, dataset.str());
  } catch (const std::exception& e) {
    err << "export failed: " << e.what() << "\n";
    return 2;
  }
  out << stats.records << " record(s) written to " << options.out_path;
  if (stats.skipped > 0) out << " (" << stats.skipped << " skipped)";
  out << "\n";
  for (const auto& w : stats.warnings) err << "warning: " << w << "\n";
  return 0;
}

}  // namespace mctsr::cli
