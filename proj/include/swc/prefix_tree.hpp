#pragma once

#include <span>
#include <vector>

#include "swc/core_model.hpp"

namespace swc {

// Sampled paths grouped by exactly equal prefixes. Stage t (1..H-1) nodes
// stand for distinct histories xi^1..xi^t and carry the certificate x^{t+1}.
// Node ids within a stage follow first appearance in path order.
class ScenarioPrefixTree {
 public:
  int periods() const { return periods_; }
  bool shares_prefixes() const { return share_; }
  int path_count() const { return static_cast<int>(paths_.size()); }
  int node_count(int t) const { return static_cast<int>(parent_.at(t - 1).size()); }

  const std::vector<ScenarioPath>& paths() const { return paths_; }
  const ScenarioPath& path(int i) const { return paths_.at(i); }
  int node_of(int path, int t) const { return path_node_[std::size_t(path) * periods_ + (t - 1)]; }
  // Stage t-1 node above a stage-t node; -1 at stage 1.
  int parent(int t, int node) const { return parent_[t - 1][node]; }
  // First path passing through the node; its prefix is the node's history.
  int representative(int t, int node) const { return representative_[t - 1][node]; }
  const std::vector<double>& realization(int t, int node) const {
    return paths_[representative(t, node)].realizations[t - 1];
  }

 private:
  friend ScenarioPrefixTree build_prefix_tree(std::vector<ScenarioPath> paths, bool share);
  int periods_ = 0;
  bool share_ = true;
  std::vector<ScenarioPath> paths_;
  std::vector<int> path_node_;
  std::vector<std::vector<int>> parent_;
  std::vector<std::vector<int>> representative_;
};

// share = false gives every path private nodes at every stage (no
// nonanticipativity beyond the first-stage decision).
ScenarioPrefixTree build_prefix_tree(std::vector<ScenarioPath> paths, bool share = true);

}  // namespace swc
