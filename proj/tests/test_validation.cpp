#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>

#include "swc/inventory.hpp"
#include "swc/validation.hpp"

namespace swc {
namespace {

struct Solved {
  ProblemData data;
  SwcSolution sol;
};

Solved solve_inventory(int H, long N, std::uint64_t seed) {
  Solved s{inventory_problem(H, InventoryVariant::Continuous), {}};
  s.sol = solve_swc(s.data.model, build_prefix_tree(draw_paths(s.data.uncertainty, N, seed)));
  return s;
}

TEST(Certificate, TrainingPathsAreFeasible) {
  const Solved s = solve_inventory(5, 40, 6);
  for (const ScenarioPath& p : draw_paths(s.data.uncertainty, 40, 6)) {
    const RecourseCheck c = certificate_check(s.data.model, s.sol.x1, s.sol.value, p);
    EXPECT_TRUE(c.feasible);
    EXPECT_LE(c.cost, s.sol.value + kViolationTol);
  }
  // Lowering gamma below the worst training path must fail somewhere.
  int failed = 0;
  for (const ScenarioPath& p : draw_paths(s.data.uncertainty, 40, 6)) {
    failed += !certificate_feasible(s.data.model, s.sol.x1, s.sol.value - 1.0, p);
  }
  EXPECT_GT(failed, 0);
}

TEST(Certificate, RobustSolutionNeverViolated) {
  const ProblemData d = inventory_problem(3, InventoryVariant::Continuous);
  const ExactResult ro = exact_value(d.model, d.uncertainty, ExactMode::RO);
  EXPECT_EQ(empirical_violation(d.model, d.uncertainty, ro.x1, ro.value, 5, 200, 77), 0.0);
}

TEST(EmpiricalViolation, IndependentOfChunkAndThreads) {
  const Solved s = solve_inventory(5, 20, 2);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(3);
  ViolationOptions serial;
  serial.execution = Execution::Serial;
  ViolationOptions parallel;
  parallel.chunk = 37;
  const double a = empirical_violation(s.data.model, s.data.uncertainty, s.sol.x1, s.sol.value,
                                       10, 50, 123, serial);
  const double b = empirical_violation(s.data.model, s.data.uncertainty, s.sol.x1, s.sol.value,
                                       10, 50, 123, parallel);
  omp_set_num_threads(saved);
  EXPECT_EQ(a, b);
  EXPECT_GT(a, 0.0);
  EXPECT_LT(a, 0.5);
}

TEST(EmpiricalViolation, MatchesDirectCount) {
  const Solved s = solve_inventory(3, 10, 4);
  const long L = 3;
  const long N = 40;
  const std::uint64_t seed = 99;
  Rng rng(seed);
  const PathSampler sampler = uniform_sampler(s.data.uncertainty);
  long bad = 0;
  for (long i = 0; i < L * N; ++i) {
    bad += !certificate_feasible(s.data.model, s.sol.x1, s.sol.value, sampler(rng));
  }
  EXPECT_DOUBLE_EQ(empirical_violation(s.data.model, s.data.uncertainty, s.sol.x1, s.sol.value,
                                       L, N, seed),
                   static_cast<double>(bad) / (L * N));
  EXPECT_THROW(empirical_violation(s.data.model, s.data.uncertainty, s.sol.x1, s.sol.value, 0, N,
                                   seed),
               InvalidArgument);
}

// Trained on thirty times more paths, the solution violates less on the
// same validation stream.
TEST(EmpiricalViolation, ShrinksWithSampleSize) {
  const Solved small = solve_inventory(2, 10, 5);
  const Solved large = solve_inventory(2, 300, 5);
  const auto& d = small.data;
  const double vs = empirical_violation(d.model, d.uncertainty, small.sol.x1, small.sol.value, 20, 100, 8);
  const double vl = empirical_violation(d.model, d.uncertainty, large.sol.x1, large.sol.value, 20, 100, 8);
  EXPECT_LT(vl, vs);
}

TEST(Gap, DefinitionAndRvpi) {
  EXPECT_DOUBLE_EQ(optimality_gap(90.0, 100.0), -0.1);
  EXPECT_THROW(optimality_gap(1.0, 0.0), InvalidArgument);
  const ProblemData d = inventory_problem(5, InventoryVariant::Continuous);
  EXPECT_NEAR(rvpi(d.model, d.uncertainty), 375.663, 1e-2);
  EXPECT_NEAR(optimality_gap(1831.891109, 2207.554108), -0.170172, 1e-5);
}

}  // namespace
}  // namespace swc
