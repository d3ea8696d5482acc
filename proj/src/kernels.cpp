#include <omp.h>

#include <exception>

#include "swc/builders.hpp"
#include "swc/kernels.hpp"

namespace swc {

namespace {

double path_cost(const MultistageRobustLP& problem, const ScenarioPath& path,
                 std::span<const double> x1, lp::SimplexSolver& solver) {
  const TreeLp t = build_path_lp(problem, path, x1);
  const lp::SolveResult r = solver.solve(t.lp);
  switch (r.status) {
    case lp::SolveStatus::Optimal:
      return r.objective + t.objective_offset;
    case lp::SolveStatus::Infeasible:
      return kInf;
    case lp::SolveStatus::Unbounded:
      return -kInf;
    case lp::SolveStatus::IterationLimit:
      break;
  }
  throw SolverError("path LP hit the iteration limit");
}

}  // namespace

int kernel_threads() { return omp_in_parallel() ? 1 : omp_get_max_threads(); }

void for_each_item(long count, Execution exec, const lp::SimplexOptions& options,
                   const std::function<void(long, lp::SimplexSolver&)>& fn) {
  if (exec == Execution::Serial || count < 2 || kernel_threads() == 1) {
    lp::SimplexSolver solver(options);
    for (long i = 0; i < count; ++i) fn(i, solver);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel
  {
    lp::SimplexSolver solver(options);
#pragma omp for schedule(dynamic, 8)
    for (long i = 0; i < count; ++i) {
      try {
        fn(i, solver);
      } catch (...) {
#pragma omp critical(swc_kernel_error)
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<double> recourse_costs(const MultistageRobustLP& problem, std::span<const double> x1,
                                   std::span<const ScenarioPath> paths, Execution exec,
                                   const lp::SimplexOptions& options) {
  if (static_cast<int>(x1.size()) != problem.dims.n[0]) {
    throw InvalidArgument("recourse_costs: x1 has " + std::to_string(x1.size()) +
                          " entries, expected " + std::to_string(problem.dims.n[0]));
  }
  std::vector<double> out(paths.size());
  for_each_item(static_cast<long>(paths.size()), exec, options,
                [&](long i, lp::SimplexSolver& solver) {
                  out[i] = path_cost(problem, paths[i], x1, solver);
                });
  return out;
}

std::vector<double> path_values(const MultistageRobustLP& problem,
                                std::span<const ScenarioPath> paths, Execution exec,
                                const lp::SimplexOptions& options) {
  std::vector<double> out(paths.size());
  for_each_item(static_cast<long>(paths.size()), exec, options,
                [&](long i, lp::SimplexSolver& solver) {
                  out[i] = path_cost(problem, paths[i], {}, solver);
                });
  return out;
}

}  // namespace swc
