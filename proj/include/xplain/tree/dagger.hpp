#pragma once

#include "xplain/policy/policy.hpp"
#include "xplain/tree/cart.hpp"

namespace xplain {

inline int default_max_steps(EnvId env) {
  switch (env) {
    case EnvId::Usar: return 25;
    case EnvId::Pacman: return 120;
    case EnvId::Babyai: return 40;
  }
  throw std::logic_error("bad EnvId");
}

struct DaggerParams {
  int iterations = 5;
  int episodes_per_iter = 200;
  int max_depth = 12;
  int min_samples_leaf = 1;
  int max_steps = 0;  // 0: per-env default
  int eval_episodes = 200;
  uint64_t seed = 1;
};

struct IterationStat {
  int iteration = 0;
  size_t dataset_rows = 0;
  double train_accuracy = 0.0;
  double fidelity = 0.0;
};

struct DaggerReport {
  std::vector<IterationStat> iterations;
};

struct DistillResult {
  DecisionTree tree;
  DaggerReport report;
  AggregatedDataset data;
};

namespace detail {

inline std::vector<int8_t> to_row(const FeatureVector& fv) {
  std::vector<int8_t> row(fv.values.size());
  for (size_t i = 0; i < fv.values.size(); ++i) row[i] = static_cast<int8_t>(fv.values[i]);
  return row;
}

}  // namespace detail

/// On-policy agreement: the tree drives the focal agent, and every visited
/// state counts a hit when the tree's action matches the expert's.
inline double fidelity(const DecisionTree& tree, EnvId env, Role role, Behavior behavior,
                       int episodes, uint64_t seed, int max_steps = 0) {
  if (max_steps <= 0) max_steps = default_max_steps(env);
  long long hits = 0, total = 0;
  for (int ep = 0; ep < episodes; ++ep) {
    EnvState s = reset_env(env, derive_seed(seed, 0xf1de0000ull + static_cast<uint64_t>(ep)));
    for (int t = 0; t < max_steps && !env_terminal(s); ++t) {
      FeatureVector fv = encode_state(s);
      int tree_action = tree.predict(fv.values);
      int expert_action = policy_action(s, role, behavior);
      total += 1;
      if (tree_action == expert_action) hits += 1;
      env_advance(s, role, tree_action, behavior);
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

/// DAgger with a hard expert-to-learner handoff: the expert drives rollouts
/// only on iteration 0, the current tree drives afterwards, and the expert
/// labels every visited state. The tree is refit on the aggregate after each
/// iteration.
inline DistillResult dagger_distill(EnvId env, Role role, Behavior behavior,
                                    const DaggerParams& params = {}) {
  int max_steps = params.max_steps > 0 ? params.max_steps : default_max_steps(env);
  DistillResult result;
  result.data.manifest_id = manifest_for(env).id;
  result.data.n_features = manifest_for(env).size();
  result.data.n_actions = num_actions(env);

  FitParams fit_params{params.max_depth, params.min_samples_leaf};
  DecisionTree tree;

  for (int k = 0; k < params.iterations; ++k) {
    for (int ep = 0; ep < params.episodes_per_iter; ++ep) {
      uint64_t ep_seed = derive_seed(
          params.seed, (static_cast<uint64_t>(k) << 24) | static_cast<uint64_t>(ep));
      EnvState s = reset_env(env, ep_seed);
      for (int t = 0; t < max_steps && !env_terminal(s); ++t) {
        FeatureVector fv = encode_state(s);
        int expert_action = policy_action(s, role, behavior);
        result.data.add(detail::to_row(fv), expert_action, k);
        int actor_action = k == 0 ? expert_action : tree.predict(fv.values);
        env_advance(s, role, actor_action, behavior);
      }
    }
    tree = fit_tree(result.data, fit_params);
    IterationStat stat;
    stat.iteration = k;
    stat.dataset_rows = result.data.rows.size();
    stat.train_accuracy = training_accuracy(tree, result.data);
    stat.fidelity = fidelity(tree, env, role, behavior, params.eval_episodes,
                             derive_seed(params.seed, 0xeea10000ull + static_cast<uint64_t>(k)),
                             max_steps);
    result.report.iterations.push_back(stat);
  }
  result.tree = std::move(tree);
  return result;
}

}  // namespace xplain
