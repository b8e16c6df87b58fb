#include <CLI11.hpp>

#include "xplain/cli/commands.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string out_dir;
  std::string assets_dir;
  long long seed = -1;
  bool mock = false;
};

xplain::ExperimentConfig resolve_config(const Flags& f) {
  xplain::ExperimentConfig cfg = xplain::load_config(f.config_path);
  if (f.seed >= 0) cfg.seed = static_cast<uint64_t>(f.seed);
  if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
  if (!f.assets_dir.empty()) cfg.assets_dir = f.assets_dir;
  if (f.mock) {
    cfg.explainer.mode = "mock";
    cfg.judge.mode = "mock";
  }
  if (cfg.explainer.mode == "mock" && cfg.explainer.fixtures_path.empty()) {
    throw xplain::XplainError("config", "explainer is in mock mode but has no fixtures_path");
  }
  if (cfg.judge.mode == "mock" && cfg.judge.fixtures_path.empty()) {
    throw xplain::XplainError("config", "judge is in mock mode but has no fixtures_path");
  }
  return cfg;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "Experiment config JSON")->required();
  cmd->add_option("--seed", f.seed, "Override the config seed");
  cmd->add_option("--out", f.out_dir, "Override the config out_dir");
  cmd->add_option("--assets", f.assets_dir, "Override the assets directory");
  cmd->add_flag("--mock", f.mock, "Force both models into mock mode");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distill a policy into a decision tree, render behavior "
               "representations, and evaluate LLM explanations"};
  app.require_subcommand(1);

  Flags f;
  CLI::App* distill = app.add_subcommand("distill", "Fit decision trees and report fidelity");
  CLI::App* explain = app.add_subcommand("explain", "Sample states and query the explainer");
  CLI::App* evaluate = app.add_subcommand("evaluate", "Judge rankings, predictions, scoring");
  CLI::App* report = app.add_subcommand("report", "Regenerate the report from artifacts");
  for (CLI::App* cmd : {distill, explain, evaluate, report}) add_common(cmd, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    xplain::ExperimentConfig cfg = resolve_config(f);
    xplain::AssetStore assets(cfg.assets_dir.empty() ? xplain::default_assets_dir()
                                                     : cfg.assets_dir);
    if (distill->parsed()) return xplain::cmd_distill(cfg, assets);
    if (explain->parsed()) return xplain::cmd_explain(cfg, assets);
    if (evaluate->parsed()) return xplain::cmd_evaluate(cfg, assets);
    return xplain::cmd_report(cfg, assets);
  } catch (const xplain::XplainError& e) {
    std::cerr << "error: " << e.code << ": " << e.what() << "\n";
    return e.code == "usage" ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: runtime: " << e.what() << "\n";
    return 1;
  }
}
