#pragma once

#include <string>
#include <vector>

#include "xplain/core/util.hpp"

namespace xplain {

/// Internal nodes test `value[feature] <= threshold` (left on true); leaves
/// carry the majority action and the training action distribution.
struct TreeNode {
  int feature = -1;
  int threshold = 0;
  int left = -1;
  int right = -1;
  int action = -1;
  std::vector<double> distribution;

  bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
  std::string manifest_id;
  int n_actions = 0;
  int max_depth = 0;  // deepest leaf, in edges from the root
  std::vector<TreeNode> nodes;

  template <typename Vec>
  int predict(const Vec& x) const {
    int i = 0;
    while (!nodes[static_cast<size_t>(i)].is_leaf()) {
      const TreeNode& n = nodes[static_cast<size_t>(i)];
      i = static_cast<int>(x[static_cast<size_t>(n.feature)]) <= n.threshold ? n.left
                                                                             : n.right;
    }
    return nodes[static_cast<size_t>(i)].action;
  }

  json to_json() const {
    json nodes_json = json::array();
    for (const TreeNode& n : nodes) {
      if (n.is_leaf()) {
        nodes_json.push_back({{"action", n.action}, {"distribution", n.distribution}});
      } else {
        nodes_json.push_back({{"feature", n.feature},
                              {"threshold", n.threshold},
                              {"left", n.left},
                              {"right", n.right}});
      }
    }
    return json{{"manifest", manifest_id},
                {"n_actions", n_actions},
                {"max_depth", max_depth},
                {"nodes", nodes_json}};
  }

  static DecisionTree from_json(const json& j) {
    DecisionTree t;
    t.manifest_id = j.at("manifest").get<std::string>();
    t.n_actions = j.at("n_actions").get<int>();
    t.max_depth = j.at("max_depth").get<int>();
    for (const auto& nj : j.at("nodes")) {
      TreeNode n;
      if (nj.contains("action")) {
        n.action = nj.at("action").get<int>();
        n.distribution = nj.at("distribution").get<std::vector<double>>();
      } else {
        n.feature = nj.at("feature").get<int>();
        n.threshold = nj.at("threshold").get<int>();
        n.left = nj.at("left").get<int>();
        n.right = nj.at("right").get<int>();
      }
      t.nodes.push_back(n);
    }
    return t;
  }
};

}  // namespace xplain
