#pragma once

#include <algorithm>

#include "xplain/eval/criteria.hpp"
#include "xplain/eval/scoring.hpp"
#include "xplain/llm/chat.hpp"
#include "xplain/tree/dagger.hpp"

namespace xplain {

/// Error with a short machine-readable code; the CLI prints it as
/// "error: <code>: <message>".
struct XplainError : std::runtime_error {
  std::string code;
  XplainError(std::string code_, const std::string& message)
      : std::runtime_error(message), code(std::move(code_)) {}
};

struct SampleConfig {
  int count = 20;        // samples per (behavior, role)
  int episodes = 200;    // expert episodes scanned for candidates
  std::string selector = "random";  // random | long_term | short_term | ambiguous
  int support_pairs = 5;            // State-method history length
};

struct ExperimentConfig {
  EnvId env = EnvId::Usar;
  std::vector<Behavior> behaviors;
  std::vector<Role> roles;
  std::vector<Method> methods;
  DaggerParams distill;
  double fidelity_floor = 0.0;
  SampleConfig samples;
  ModelConfig explainer;
  ModelConfig judge;
  std::vector<Criterion> criteria;
  ScoringMode scoring = ScoringMode::KeywordAuto;
  std::string human_scores_path;
  std::string annotations_path;
  uint64_t seed = 1;
  std::string out_dir;
  std::string assets_dir;
  int context_budget_tokens = 32768;

  static ExperimentConfig from_json(const json& j) {
    ExperimentConfig c;
    if (!j.contains("env")) throw XplainError("config", "config is missing \"env\"");
    c.env = env_from_string(j.at("env").get<std::string>());
    if (!j.contains("seed")) throw XplainError("config", "config is missing \"seed\"");
    c.seed = j.at("seed").get<uint64_t>();
    if (!j.contains("out_dir")) throw XplainError("config", "config is missing \"out_dir\"");
    c.out_dir = j.at("out_dir").get<std::string>();

    if (j.contains("behaviors")) {
      for (const auto& b : j.at("behaviors")) {
        c.behaviors.push_back(behavior_from_string(b.get<std::string>()));
      }
    } else {
      c.behaviors = behaviors_for(c.env);
    }
    if (j.contains("roles")) {
      for (const auto& r : j.at("roles")) c.roles.push_back(role_from_string(r.get<std::string>()));
    } else {
      c.roles = roles_for(c.env);
    }
    if (j.contains("methods")) {
      for (const auto& m : j.at("methods")) {
        c.methods.push_back(method_from_string(m.get<std::string>()));
      }
    } else {
      c.methods = {Method::Path, Method::State, Method::NoBR};
    }
    if (j.contains("criteria")) {
      for (const auto& cr : j.at("criteria")) {
        c.criteria.push_back(criterion_from_string(cr.get<std::string>()));
      }
    } else {
      c.criteria = criteria_for(c.env);
    }

    if (j.contains("distill")) {
      const json& d = j.at("distill");
      c.distill.iterations = d.value("iterations", c.distill.iterations);
      c.distill.episodes_per_iter = d.value("episodes_per_iter", c.distill.episodes_per_iter);
      c.distill.max_depth = d.value("max_depth", c.distill.max_depth);
      c.distill.min_samples_leaf = d.value("min_samples_leaf", c.distill.min_samples_leaf);
      c.distill.max_steps = d.value("max_steps", c.distill.max_steps);
      c.distill.eval_episodes = d.value("eval_episodes", c.distill.eval_episodes);
      c.fidelity_floor = d.value("fidelity_floor", c.fidelity_floor);
    }
    if (j.contains("samples")) {
      const json& s = j.at("samples");
      c.samples.count = s.value("count", c.samples.count);
      c.samples.episodes = s.value("episodes", c.samples.episodes);
      c.samples.selector = s.value("selector", c.samples.selector);
      c.samples.support_pairs = s.value("support_pairs", c.samples.support_pairs);
    }
    if (j.contains("explainer")) c.explainer = ModelConfig::from_json(j.at("explainer"));
    if (j.contains("judge")) c.judge = ModelConfig::from_json(j.at("judge"));
    if (j.contains("scoring")) c.scoring = scoring_mode_from_string(j.at("scoring").get<std::string>());
    c.human_scores_path = j.value("human_scores_path", std::string());
    c.annotations_path = j.value("annotations_path", std::string());
    c.assets_dir = j.value("assets_dir", std::string());
    c.context_budget_tokens = j.value("context_budget_tokens", c.context_budget_tokens);

    if (c.scoring == ScoringMode::HumanImport && c.human_scores_path.empty()) {
      throw XplainError("config", "scoring mode human_import requires human_scores_path");
    }
    if (c.samples.selector != "random" && c.samples.selector != "long_term" &&
        c.samples.selector != "short_term" && c.samples.selector != "ambiguous") {
      throw XplainError("config", "unknown selector: " + c.samples.selector);
    }
    for (size_t i = 0; i < c.methods.size(); ++i) {
      for (size_t k = i + 1; k < c.methods.size(); ++k) {
        if (c.methods[i] == c.methods[k]) {
          throw XplainError("config", "duplicate method: " + to_string(c.methods[i]));
        }
      }
    }
    for (Behavior b : c.behaviors) {
      auto allowed = behaviors_for(c.env);
      if (std::find(allowed.begin(), allowed.end(), b) == allowed.end()) {
        throw XplainError("config", "behavior " + to_string(b) + " is not valid for " +
                                        to_string(c.env));
      }
    }
    for (Role r : c.roles) {
      auto allowed = roles_for(c.env);
      if (std::find(allowed.begin(), allowed.end(), r) == allowed.end()) {
        throw XplainError("config", "role " + to_string(r) + " is not valid for " +
                                        to_string(c.env));
      }
    }
    return c;
  }

  json to_json() const {
    json j;
    j["env"] = to_string(env);
    json bs = json::array();
    for (Behavior b : behaviors) bs.push_back(to_string(b));
    j["behaviors"] = bs;
    json rs = json::array();
    for (Role r : roles) rs.push_back(to_string(r));
    j["roles"] = rs;
    json ms = json::array();
    for (Method m : methods) ms.push_back(to_string(m));
    j["methods"] = ms;
    j["distill"] = {{"iterations", distill.iterations},
                    {"episodes_per_iter", distill.episodes_per_iter},
                    {"max_depth", distill.max_depth},
                    {"min_samples_leaf", distill.min_samples_leaf},
                    {"max_steps", distill.max_steps},
                    {"eval_episodes", distill.eval_episodes},
                    {"fidelity_floor", fidelity_floor}};
    j["samples"] = {{"count", samples.count},
                    {"episodes", samples.episodes},
                    {"selector", samples.selector},
                    {"support_pairs", samples.support_pairs}};
    j["explainer"] = {{"mode", explainer.mode}, {"model", explainer.model}};
    j["judge"] = {{"mode", judge.mode}, {"model", judge.model}};
    json cs = json::array();
    for (Criterion cr : criteria) cs.push_back(to_string(cr));
    j["criteria"] = cs;
    j["scoring"] = to_string(scoring);
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["context_budget_tokens"] = context_budget_tokens;
    return j;
  }
};

inline ExperimentConfig load_config(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw XplainError("usage", "config file not found: " + path);
  }
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const std::exception& e) {
    throw XplainError("config", "config is not valid JSON: " + std::string(e.what()));
  }
  return ExperimentConfig::from_json(j);
}

}  // namespace xplain
