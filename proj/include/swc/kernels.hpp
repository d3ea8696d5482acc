#pragma once

#include <functional>
#include <span>
#include <vector>

#include "swc/core_model.hpp"
#include "swc/lp.hpp"

namespace swc {

// Serial is the reference implementation; Parallel distributes items over
// OpenMP threads with one simplex workspace per thread. Both write results by
// item index, so outputs are identical.
enum class Execution { Serial, Parallel };

// Calls fn(i, solver) for i in [0, count).
void for_each_item(long count, Execution exec, const lp::SimplexOptions& options,
                   const std::function<void(long, lp::SimplexSolver&)>& fn);

// Minimum total cost c1'x1 + sum_t c^t'x^t along each path with x^1 fixed:
// +inf when no recourse exists, -inf when unbounded below.
std::vector<double> recourse_costs(const MultistageRobustLP& problem, std::span<const double> x1,
                                   std::span<const ScenarioPath> paths, Execution exec,
                                   const lp::SimplexOptions& options = {});

// Fully anticipative minimum cost of each path (x^1 free), same conventions.
std::vector<double> path_values(const MultistageRobustLP& problem,
                                std::span<const ScenarioPath> paths, Execution exec,
                                const lp::SimplexOptions& options = {});

// Number of threads a Parallel kernel would use here (1 inside a parallel region).
int kernel_threads();

}  // namespace swc
