#pragma once

#include <vector>

#include "swc/builders.hpp"
#include "swc/kernels.hpp"

namespace swc {

enum class SwcStrategy {
  Auto,                // direct when the full LP is small, otherwise scenario generation
  Direct,              // one LP over every path
  ScenarioGeneration,  // grow a path subset until every other path is satisfied
};

struct SwcOptions {
  SwcStrategy strategy = SwcStrategy::Auto;
  int direct_row_limit = 400;
  int paths_per_round = 8;
  // Stop once every path cost is within tol * max(1, |gamma|) of gamma.
  double generation_tol = 1e-9;
  Execution execution = Execution::Parallel;
  lp::SolverChoice solver;
};

struct SwcSolution {
  lp::SolveStatus status = lp::SolveStatus::Infeasible;
  double value = 0.0;  // optimal gamma
  std::vector<double> x1;
  int master_paths = 0;  // paths in the final LP
  int rounds = 0;
  int lp_rows = 0;
  int lp_cols = 0;
  long iterations = 0;

  bool optimal() const { return status == lp::SolveStatus::Optimal; }
};

// Optimum of the SwC problem over the tree (min gamma subject to a
// nonanticipative certificate path per sample with cost <= gamma).
// Scenario generation returns the same optimum as the direct LP: it only
// stops when no omitted path is violated.
SwcSolution solve_swc(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree,
                      const SwcOptions& options = {});

// Rows of build_swc(problem, tree) without building it.
long swc_row_count(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree);

}  // namespace swc
