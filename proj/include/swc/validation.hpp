#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swc/bounds.hpp"
#include "swc/sampling.hpp"

namespace swc {

inline constexpr double kViolationTol = 1e-7;

struct RecourseCheck {
  bool feasible = false;
  double cost = 0.0;  // optimal total cost along the path, +inf without recourse
};

// Fixes x^1 and minimizes total cost over x^2..x^H along the path; feasible
// iff a recourse exists with cost <= gamma + tol.
RecourseCheck certificate_check(const MultistageRobustLP& problem, std::span<const double> x1,
                                double gamma, const ScenarioPath& path,
                                const lp::SimplexOptions& options = {}, double tol = kViolationTol);
bool certificate_feasible(const MultistageRobustLP& problem, std::span<const double> x1,
                          double gamma, const ScenarioPath& path,
                          const lp::SimplexOptions& options = {}, double tol = kViolationTol);

struct ViolationOptions {
  Execution execution = Execution::Parallel;
  double tol = kViolationTol;
  long chunk = 8192;  // paths drawn and evaluated per step, bounds memory
  lp::SimplexOptions simplex;
};

// Fraction of L*N fresh paths failing certificate_feasible. All paths come
// from one generator seeded with `seed`, in order, so the result does not
// depend on chunking or thread count. Equals the mean over L batches of N.
double empirical_violation(const MultistageRobustLP& problem, const PathSampler& sampler,
                           std::span<const double> x1, double gamma, long L, long N,
                           std::uint64_t seed, const ViolationOptions& options = {});
double empirical_violation(const MultistageRobustLP& problem, const UncertaintySet& set,
                           std::span<const double> x1, double gamma, long L, long N,
                           std::uint64_t seed, const ViolationOptions& options = {});

// (value - reference) / reference.
double optimality_gap(double value, double reference);

// exact RO - exact RWS.
double rvpi(const MultistageRobustLP& problem, const UncertaintySet& set,
            const ExactOptions& options = {});

}  // namespace swc
