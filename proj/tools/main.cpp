#include <CLI11.hpp>

#include <iostream>

#include "mctsr/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"MCTSr-Zero dialogue search engine and PsyEval-style benchmark harness"};
  app.require_subcommand(1);

  mctsr::cli::RunOptions run_options;
  auto* run = app.add_subcommand("run", "Run searches for every query in a config file");
  run->add_option("--config", run_options.config_path, "Run config (JSON)")->required();
  std::string run_out, run_provider;
  std::uint64_t run_seed = 0;
  auto* run_out_opt = run->add_option("--out", run_out, "Output directory for run artifacts");
  auto* run_seed_opt = run->add_option("--seed", run_seed, "Override the search seed");
  auto* run_provider_opt =
      run->add_option("--provider", run_provider, "Provider type override")
          ->check(CLI::IsMember({"http", "scripted"}));

  mctsr::cli::ReplayOptions replay_options;
  auto* replay = app.add_subcommand("replay", "Verify a recorded trace against recomputation");
  replay->add_option("path", replay_options.path, "Run directory or trace file")->required();

  mctsr::cli::EvalOptions eval_options;
  auto* eval = app.add_subcommand("eval", "Run the benchmark harness over a scenario library");
  eval->add_option("--config", eval_options.config_path, "Eval config (JSON)")->required();
  std::string eval_out, eval_category, eval_provider;
  auto* eval_out_opt = eval->add_option("--out", eval_out, "Output directory");
  auto* eval_category_opt =
      eval->add_option("--category", eval_category, "Only scenarios of this category");
  auto* eval_provider_opt =
      eval->add_option("--provider", eval_provider, "Provider type override")
          ->check(CLI::IsMember({"http", "scripted"}));

  mctsr::cli::ExportOptions export_options;
  auto* exp = app.add_subcommand("export", "Export a training dataset from run artifacts");
  exp->add_option("input", export_options.input_path, "Run directory, snapshot, or transcripts")
      ->required();
  exp->add_option("--format", export_options.format, "Dataset format")
      ->required()
      ->check(CLI::IsMember({"sft", "preference"}));
  exp->add_option("--out", export_options.out_path, "Output JSONL path")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (*run_out_opt) run_options.out_dir = run_out;
    if (*run_seed_opt) run_options.seed = run_seed;
    if (*run_provider_opt) run_options.provider = run_provider;
    return mctsr::cli::cmd_run(run_options, std::cout, std::cerr);
  }
  if (replay->parsed()) return mctsr::cli::cmd_replay(replay_options, std::cout, std::cerr);
  if (eval->parsed()) {
    if (*eval_out_opt) eval_options.out_dir = eval_out;
    if (*eval_category_opt) eval_options.category = eval_category;
    if (*eval_provider_opt) eval_options.provider = eval_provider;
    return mctsr::cli::cmd_eval(eval_options, std::cout, std::cerr);
  }
  if (exp->parsed()) return mctsr::cli::cmd_export(export_options, std::cout, std::cerr);
  return 2;
}
