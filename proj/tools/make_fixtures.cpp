#include <filesystem>
#include <iostream>
#include <map>

#include "xplain/cli/commands.hpp"
#include "xplain/testing/mock_models.hpp"

namespace fs = std::filesystem;
using namespace xplain;

namespace {

/// Runs the pipeline once with scripted models while recording every
/// exchange, writes the recordings as the config's fixture files plus golden
/// prompt and report copies, then replays the run through those fixtures and
/// insists the regenerated report is byte-identical.
void make_for(const std::string& config_path) {
  ExperimentConfig cfg = load_config(config_path);
  AssetStore assets(cfg.assets_dir.empty() ? default_assets_dir() : cfg.assets_dir);
  fs::remove_all(cfg.out_dir);

  cmd_distill(cfg, assets);

  testing::ScriptedExplainer explainer(cfg.env);
  RecordingClient rec_explainer(explainer);
  cmd_explain(cfg, assets, &rec_explainer);

  testing::ScriptedJudge judge;
  RecordingClient rec_judge(judge);
  cmd_evaluate(cfg, assets, &rec_judge, &rec_explainer);

  write_file(cfg.explainer.fixtures_path, rec_explainer.recorded().dump(2) + "\n");
  write_file(cfg.judge.fixtures_path, rec_judge.recorded().dump(2) + "\n");

  std::string env_name = to_string(cfg.env);
  std::string golden_md = read_file(cfg.out_dir + "/report.md");
  write_file("assets/fixtures/e2e/" + env_name + ".report.md", golden_md);
  write_file("assets/fixtures/e2e/" + env_name + ".report.json",
             read_file(cfg.out_dir + "/report.json"));

  std::map<std::string, bool> seen;
  for (const json& e : read_jsonl(cfg.out_dir + "/explanations.jsonl")) {
    std::string m = e.at("method").get<std::string>();
    if (seen[m]) continue;
    seen[m] = true;
    write_file("assets/fixtures/prompts/" + env_name + "." + m + ".txt",
               e.at("prompt").get<std::string>() + "\n");
  }

  cmd_explain(cfg, assets);
  cmd_evaluate(cfg, assets);
  if (read_file(cfg.out_dir + "/report.md") != golden_md) {
    throw std::runtime_error("replayed report differs from golden for " + env_name);
  }
  std::cout << "fixtures " << env_name << ": " << rec_explainer.recorded().size()
            << " explainer replies, " << rec_judge.recorded().size() << " judge replies\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> configs = {"assets/configs/usar_mock.json",
                                      "assets/configs/pacman_mock.json",
                                      "assets/configs/babyai_mock.json"};
  if (argc > 1) configs.assign(argv + 1, argv + argc);
  try {
    for (const std::string& c : configs) make_for(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
