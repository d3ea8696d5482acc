#include <cmath>

#include "swc/validation.hpp"

namespace swc {

RecourseCheck certificate_check(const MultistageRobustLP& problem, std::span<const double> x1,
                                double gamma, const ScenarioPath& path,
                                const lp::SimplexOptions& options, double tol) {
  const ScenarioPath one[] = {path};
  const double cost = recourse_costs(problem, x1, one, Execution::Serial, options).front();
  return {cost <= gamma + tol, cost};
}

bool certificate_feasible(const MultistageRobustLP& problem, std::span<const double> x1,
                          double gamma, const ScenarioPath& path,
                          const lp::SimplexOptions& options, double tol) {
  return certificate_check(problem, x1, gamma, path, options, tol).feasible;
}

double empirical_violation(const MultistageRobustLP& problem, const PathSampler& sampler,
                           std::span<const double> x1, double gamma, long L, long N,
                           std::uint64_t seed, const ViolationOptions& options) {
  if (L < 1 || N < 1) throw InvalidArgument("empirical_violation: L and N must be >= 1");
  const long total = L * N;
  const long chunk = std::max(1L, options.chunk);
  Rng rng(seed);
  long violated = 0;
  std::vector<ScenarioPath> paths;
  for (long done = 0; done < total;) {
    const long count = std::min(chunk, total - done);
    paths.clear();
    for (long i = 0; i < count; ++i) paths.push_back(sampler(rng));
    const std::vector<double> costs =
        recourse_costs(problem, x1, paths, options.execution, options.simplex);
    for (double c : costs) {
      if (!(c <= gamma + options.tol)) ++violated;
    }
    done += count;
  }
  return static_cast<double>(violated) / static_cast<double>(total);
}

double empirical_violation(const MultistageRobustLP& problem, const UncertaintySet& set,
                           std::span<const double> x1, double gamma, long L, long N,
                           std::uint64_t seed, const ViolationOptions& options) {
  return empirical_violation(problem, uniform_sampler(set), x1, gamma, L, N, seed, options);
}

double optimality_gap(double value, double reference) {
  if (reference == 0.0) throw InvalidArgument("optimality_gap: zero reference value");
  return (value - reference) / reference;
}

double rvpi(const MultistageRobustLP& problem, const UncertaintySet& set,
            const ExactOptions& options) {
  return exact_value(problem, set, ExactMode::RO, options).value -
         exact_value(problem, set, ExactMode::RWS, options).value;
}

}  // namespace swc
