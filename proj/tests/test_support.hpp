#pragma once

#include <random>
#include <vector>

#include "swc/lp.hpp"
#include "swc/problem_io.hpp"

namespace swc::testing {

struct OracleResult {
  lp::SolveStatus status = lp::SolveStatus::Infeasible;
  double objective = 0.0;
};

// Enumerates basic solutions of the LP (every choice of n linearly
// independent tight constraints among rows and bounds) and returns the best
// feasible one. Infinite bounds are replaced by |x_j| <= M; the optimum is
// declared unbounded when doubling M still lowers it. Only for tiny LPs.
OracleResult enumerate_vertices(const lp::LpInstance& lp, double big = 1e6);

// Random LP with at most max_vars columns and max_rows rows: integer data,
// mixed row senses, mixed bound types. About 70% are feasible by
// construction (rows slack or tight at a planted integer point).
lp::LpInstance random_lp(std::mt19937_64& rng, int max_vars = 8, int max_rows = 8);

// Random multistage problem with discrete 1-d supports (<= 3 points per
// stage, <= 3 variables per stage). Every recourse problem is feasible and
// bounded: W >= 0.5 entrywise on covering rows and x^t <= 10.
ProblemData random_discrete_problem(std::mt19937_64& rng, int stages);

// Robust value by the nested epigraph recursion over the complete scenario
// tree: phi(node) >= c^t x^t(node) + phi(child) for every child, min phi(root).
// Built independently of the library builders.
double nested_minmax_value(const ProblemData& data);

// Two-stage problems with a single first-stage variable only:
// min over x1 of c1 x1 + max over support of the recourse value, by golden
// section on the convex function of x1 (recourse LPs built here).
double two_stage_line_search(const ProblemData& data, double lo, double hi);

}  // namespace swc::testing
