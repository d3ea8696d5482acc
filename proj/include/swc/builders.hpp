#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swc/core_model.hpp"
#include "swc/lp.hpp"
#include "swc/lp_format.hpp"
#include "swc/prefix_tree.hpp"

namespace swc {

struct IndexRange {
  int begin = 0;
  int size = 0;
};

struct VariableIndexMap {
  int gamma = -1;    // -1 without an epigraph variable
  IndexRange first;  // x^1; empty when x^1 is fixed
  // blocks[t-2][node]: certificate x^t of a stage-(t-1) tree node, t = 2..H.
  // Empty for fixed stages.
  std::vector<std::vector<IndexRange>> blocks;
  int total = 0;
};

// Cost of one path as constant + sum coef * x[col].
struct PathCost {
  double constant = 0.0;
  std::vector<int> cols;
  std::vector<double> coefs;

  double evaluate(std::span<const double> x) const;
};

struct TreeLp {
  lp::LpInstance lp;
  VariableIndexMap map;
  std::vector<PathCost> path_costs;  // one per tree path
  // Without an epigraph variable the LP objective omits the fixed-stage
  // cost; add this to recover the path cost.
  double objective_offset = 0.0;
};

struct TreeLpOptions {
  bool epigraph = true;  // min gamma over all leaves; false needs a single leaf
  // Decisions x^1..x^s of the fixed stages, shared by every path of the tree.
  std::vector<std::vector<double>> fixed;
  bool names = true;
};

// Deterministic equivalent over a prefix tree. Variable order: gamma, x^1,
// then certificate blocks stage by stage in node order. Dynamics rows of a
// shared node are emitted once; one epigraph row per leaf.
TreeLp build_tree_lp(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree,
                     const TreeLpOptions& options = {});

TreeLp build_swc(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree);

// Single path, all stages anticipative; x^1 fixed when given.
TreeLp build_path_lp(const MultistageRobustLP& problem, const ScenarioPath& path,
                     std::span<const double> fixed_x1 = {}, bool names = false);

}  // namespace swc
