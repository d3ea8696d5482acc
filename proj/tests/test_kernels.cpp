#include <gtest/gtest.h>
#include <omp.h>

#include <atomic>
#include <cmath>

#include "swc/inventory.hpp"
#include "swc/kernels.hpp"
#include "swc/sampling.hpp"
#include "swc/solve.hpp"

namespace swc {
namespace {

// Forces several OpenMP threads even on a single core so the parallel
// branch is exercised.
class KernelTest : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

TEST_F(KernelTest, ParallelMatchesSerialReference) {
  for (int H : {2, 5}) {
    const ProblemData d = inventory_problem(H, InventoryVariant::Continuous);
    const auto paths = draw_paths(d.uncertainty, 300, 12);
    const SwcSolution s = solve_swc(d.model, build_prefix_tree(
                                                 std::vector<ScenarioPath>(paths.begin(), paths.begin() + 20)));
    const auto a = recourse_costs(d.model, s.x1, paths, Execution::Serial);
    const auto b = recourse_costs(d.model, s.x1, paths, Execution::Parallel);
    EXPECT_EQ(a, b);
    const auto c = path_values(d.model, paths, Execution::Serial);
    const auto e = path_values(d.model, paths, Execution::Parallel);
    EXPECT_EQ(c, e);
    for (std::size_t i = 0; i < paths.size(); ++i) EXPECT_LE(c[i], a[i] + 1e-9);
  }
}

TEST_F(KernelTest, ForEachItemVisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  for_each_item(1000, Execution::Parallel, {}, [&](long i, lp::SimplexSolver&) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_EQ(kernel_threads(), 4);
}

TEST_F(KernelTest, ErrorsPropagateFromWorkers) {
  EXPECT_THROW(for_each_item(100, Execution::Parallel, {},
                             [](long i, lp::SimplexSolver&) {
                               if (i == 57) throw SolverError("boom");
                             }),
               SolverError);
}

TEST_F(KernelTest, NestedRegionFallsBackToSerial) {
  int inner = 0;
#pragma omp parallel num_threads(2)
  {
#pragma omp single
    inner = kernel_threads();
  }
  EXPECT_EQ(inner, 1);
}

TEST(Kernels, InfeasibleAndUnboundedConventions) {
  const ProblemData d = inventory_problem(3, InventoryVariant::Continuous);
  const std::vector<ScenarioPath> p{ScenarioPath{{{80.0}, {100.0}}}};
  // Ordering 200 at stage 1 pushes the stage-2 cumulative order above 248.
  const std::vector<double> bad{200.0, 200.0, 94.0};
  EXPECT_EQ(recourse_costs(d.model, bad, p, Execution::Serial)[0], kInf);
  EXPECT_THROW(recourse_costs(d.model, std::vector<double>{1.0}, p, Execution::Serial),
               InvalidArgument);

  // min -x^2 with no rows: unbounded recourse.
  MultistageRobustLP m;
  m.dims = {{1, 1}, {0, 0}};
  m.uncertainty_dims = {1};
  m.first = {AffineMap(0, 1), AffineMap(0, 1), AffineMap(1, 1), {}, {VarSign::NonNegative}};
  RecourseStage st{AffineMap(0, 1), AffineMap(0, 1), AffineMap(0, 1), AffineMap(1, 1), {},
                   {VarSign::NonNegative}};
  st.c.add_base(0, 0, -1.0);
  m.recourse.push_back(st);
  const std::vector<ScenarioPath> q{ScenarioPath{{{1.0}}}};
  EXPECT_EQ(recourse_costs(m, std::vector<double>{0.0}, q, Execution::Serial)[0], -kInf);
}

// Recourse cost is convex in x1 along segments.
TEST(KernelsProperty, RecourseConvexInFirstStage) {
  const ProblemData d = inventory_problem(4, InventoryVariant::Continuous);
  const auto paths = draw_paths(d.uncertainty, 10, 2);
  const std::vector<ScenarioPath> single(paths.begin(), paths.begin() + 1);
  const SwcSolution s = solve_swc(d.model, build_prefix_tree(paths));
  std::vector<double> a = s.x1;
  std::vector<double> b = s.x1;
  // Move the order and the implied cumulative order together.
  b[0] += 20.0;
  b[2] += 20.0;
  for (double lambda : {0.25, 0.5, 0.75}) {
    std::vector<double> mid(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) mid[k] = (1 - lambda) * a[k] + lambda * b[k];
    const double fa = recourse_costs(d.model, a, single, Execution::Serial)[0];
    const double fb = recourse_costs(d.model, b, single, Execution::Serial)[0];
    const double fm = recourse_costs(d.model, mid, single, Execution::Serial)[0];
    if (std::isfinite(fa) && std::isfinite(fb)) {
      EXPECT_LE(fm, (1 - lambda) * fa + lambda * fb + 1e-7);
    }
  }
}

}  // namespace
}  // namespace swc
