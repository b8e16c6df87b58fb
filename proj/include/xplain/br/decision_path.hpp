#pragma once

#include <vector>

#include "xplain/tree/decision_tree.hpp"

namespace xplain {

/// One predicate on the root-to-leaf walk. `satisfied_gt` records which side
/// the query state fell on; `value` is the state's feature value, kept so the
/// rendered sentence can speak about the observation itself.
struct PathRule {
  int feature = -1;
  bool satisfied_gt = false;  // true: value > threshold, false: value <= threshold
  int threshold = 0;
  int value = 0;
};

struct DecisionPath {
  std::vector<PathRule> rules;
  int leaf_action = -1;
  std::string manifest_id;
};

/// Root-to-leaf rule sequence for one encoded state. Rules keep traversal
/// order; repeated features stay as separate rules (range narrowing).
inline DecisionPath extract_path(const DecisionTree& tree, const std::vector<int>& values) {
  DecisionPath path;
  path.manifest_id = tree.manifest_id;
  int i = 0;
  while (!tree.nodes[static_cast<size_t>(i)].is_leaf()) {
    const TreeNode& n = tree.nodes[static_cast<size_t>(i)];
    PathRule rule;
    rule.feature = n.feature;
    rule.threshold = n.threshold;
    rule.value = values[static_cast<size_t>(n.feature)];
    rule.satisfied_gt = rule.value > n.threshold;
    path.rules.push_back(rule);
    i = rule.satisfied_gt ? n.right : n.left;
  }
  path.leaf_action = tree.nodes[static_cast<size_t>(i)].action;
  return path;
}

/// True when every recorded predicate re-evaluates to its recorded side and
/// the leaf action matches a fresh prediction.
inline bool path_sound(const DecisionPath& path, const DecisionTree& tree,
                       const std::vector<int>& values) {
  for (const PathRule& r : path.rules) {
    bool gt = values[static_cast<size_t>(r.feature)] > r.threshold;
    if (gt != r.satisfied_gt) return false;
  }
  return path.leaf_action == tree.predict(values);
}

}  // namespace xplain
