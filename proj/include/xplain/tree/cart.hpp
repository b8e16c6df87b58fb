#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "xplain/tree/decision_tree.hpp"

namespace xplain {

/// Rows collected across DAgger iterations (tagged per iteration) against one
/// feature manifest.
struct AggregatedDataset {
  std::string manifest_id;
  size_t n_features = 0;
  int n_actions = 0;
  std::vector<std::vector<int8_t>> rows;
  std::vector<int> actions;
  std::vector<int> iteration;

  void add(std::vector<int8_t> row, int action, int iter) {
    rows.push_back(std::move(row));
    actions.push_back(action);
    iteration.push_back(iter);
  }
};

struct FitParams {
  int max_depth = 12;
  int min_samples_leaf = 1;
};

/// Split quality as the exact fraction (R*sum_k l_k^2 + L*sum_k r_k^2)/(L*R).
/// For a fixed parent this orders splits identically to Gini gain, so splits
/// can be compared with integer cross-multiplication and zero float error.
struct SplitScore {
  long long num = 0;
  long long den = 1;

  bool better_than(const SplitScore& o) const {
    return static_cast<__int128>(num) * o.den > static_cast<__int128>(o.num) * den;
  }
  bool equals(const SplitScore& o) const {
    return static_cast<__int128>(num) * o.den == static_cast<__int128>(o.num) * den;
  }
  double gini_child_impurity(long long n) const {
    return 1.0 - static_cast<double>(num) / (static_cast<double>(den) * static_cast<double>(n));
  }
};

struct Split {
  bool found = false;
  int feature = -1;
  int threshold = 0;
  SplitScore score;
};

/// Exhausts every (feature, threshold) candidate over the index subset and
/// returns the best score; ties keep the lowest feature, then threshold.
inline Split best_split(const AggregatedDataset& data, const std::vector<int>& idx,
                        int min_samples_leaf) {
  Split best;
  const long long total = static_cast<long long>(idx.size());
  if (total < 2 * static_cast<long long>(min_samples_leaf)) return best;

  // value histogram workspace; feature values are small signed ints
  constexpr int kOffset = 128;
  constexpr int kValues = 256;
  std::vector<long long> counts(static_cast<size_t>(kValues) *
                                static_cast<size_t>(data.n_actions),
                                0);

  std::vector<long long> total_class(static_cast<size_t>(data.n_actions), 0);
  for (int i : idx) total_class[static_cast<size_t>(data.actions[static_cast<size_t>(i)])]++;

  for (size_t f = 0; f < data.n_features; ++f) {
    int vmin = kValues - 1, vmax = 0;
    for (int i : idx) {
      int v = data.rows[static_cast<size_t>(i)][f] + kOffset;
      counts[static_cast<size_t>(v) * static_cast<size_t>(data.n_actions) +
             static_cast<size_t>(data.actions[static_cast<size_t>(i)])]++;
      if (v < vmin) vmin = v;
      if (v > vmax) vmax = v;
    }
    if (vmin < vmax) {
      std::vector<long long> left_class(static_cast<size_t>(data.n_actions), 0);
      long long left_n = 0;
      for (int v = vmin; v < vmax; ++v) {
        long long bucket = 0;
        for (int k = 0; k < data.n_actions; ++k) {
          long long c = counts[static_cast<size_t>(v) * static_cast<size_t>(data.n_actions) +
                               static_cast<size_t>(k)];
          left_class[static_cast<size_t>(k)] += c;
          bucket += c;
        }
        if (bucket == 0) continue;  // threshold candidates sit on present values
        left_n += bucket;
        long long right_n = total - left_n;
        if (right_n == 0) break;
        if (left_n < min_samples_leaf || right_n < min_samples_leaf) continue;

        long long sum_l2 = 0, sum_r2 = 0;
        for (int k = 0; k < data.n_actions; ++k) {
          long long l = left_class[static_cast<size_t>(k)];
          long long r = total_class[static_cast<size_t>(k)] - l;
          sum_l2 += l * l;
          sum_r2 += r * r;
        }
        SplitScore score{right_n * sum_l2 + left_n * sum_r2, left_n * right_n};
        if (!best.found || score.better_than(best.score)) {
          best.found = true;
          best.feature = static_cast<int>(f);
          best.threshold = v - kOffset;
          best.score = score;
        }
      }
    }
    // zero only the touched buckets so the workspace stays clean cheaply
    for (int v = vmin; v <= vmax; ++v) {
      for (int k = 0; k < data.n_actions; ++k) {
        counts[static_cast<size_t>(v) * static_cast<size_t>(data.n_actions) +
               static_cast<size_t>(k)] = 0;
      }
    }
  }
  return best;
}

namespace detail {

inline int majority_action(const AggregatedDataset& data, const std::vector<int>& idx,
                           std::vector<double>& distribution) {
  std::vector<long long> counts(static_cast<size_t>(data.n_actions), 0);
  for (int i : idx) counts[static_cast<size_t>(data.actions[static_cast<size_t>(i)])]++;
  int best = 0;
  for (int k = 1; k < data.n_actions; ++k) {
    if (counts[static_cast<size_t>(k)] > counts[static_cast<size_t>(best)]) best = k;
  }
  distribution.resize(static_cast<size_t>(data.n_actions));
  for (int k = 0; k < data.n_actions; ++k) {
    distribution[static_cast<size_t>(k)] =
        static_cast<double>(counts[static_cast<size_t>(k)]) / static_cast<double>(idx.size());
  }
  return best;
}

inline bool pure(const AggregatedDataset& data, const std::vector<int>& idx) {
  int first = data.actions[static_cast<size_t>(idx[0])];
  for (int i : idx) {
    if (data.actions[static_cast<size_t>(i)] != first) return false;
  }
  return true;
}

inline int grow(DecisionTree& tree, const AggregatedDataset& data, std::vector<int> idx,
                int depth, const FitParams& params) {
  if (depth > tree.max_depth) tree.max_depth = depth;
  bool stop = depth >= params.max_depth || pure(data, idx);
  Split split;
  if (!stop) {
    split = best_split(data, idx, params.min_samples_leaf);
    stop = !split.found;
  }
  int id = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (stop) {
    TreeNode& leaf = tree.nodes[static_cast<size_t>(id)];
    leaf.action = majority_action(data, idx, leaf.distribution);
    return id;
  }
  std::vector<int> left_idx, right_idx;
  for (int i : idx) {
    if (data.rows[static_cast<size_t>(i)][static_cast<size_t>(split.feature)] <=
        split.threshold) {
      left_idx.push_back(i);
    } else {
      right_idx.push_back(i);
    }
  }
  idx.clear();
  idx.shrink_to_fit();
  int left = grow(tree, data, std::move(left_idx), depth + 1, params);
  int right = grow(tree, data, std::move(right_idx), depth + 1, params);
  TreeNode& node = tree.nodes[static_cast<size_t>(id)];
  node.feature = split.feature;
  node.threshold = split.threshold;
  node.left = left;
  node.right = right;
  return id;
}

}  // namespace detail

/// Greedy CART over discrete features. Zero-gain splits are allowed while a
/// node is impure, so parity concepts (e.g. XOR) still resolve within the
/// depth budget.
inline DecisionTree fit_tree(const AggregatedDataset& data, const FitParams& params = {}) {
  if (data.rows.empty()) throw std::runtime_error("fit_tree: empty dataset");
  DecisionTree tree;
  tree.manifest_id = data.manifest_id;
  tree.n_actions = data.n_actions;
  std::vector<int> idx(data.rows.size());
  std::iota(idx.begin(), idx.end(), 0);
  detail::grow(tree, data, std::move(idx), 0, params);
  return tree;
}

/// Fraction of rows whose tree prediction matches the recorded action.
inline double training_accuracy(const DecisionTree& tree, const AggregatedDataset& data) {
  size_t hits = 0;
  for (size_t i = 0; i < data.rows.size(); ++i) {
    if (tree.predict(data.rows[i]) == data.actions[i]) hits++;
  }
  return static_cast<double>(hits) / static_cast<double>(data.rows.size());
}

}  // namespace xplain
