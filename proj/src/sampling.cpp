#include <cmath>

#include "swc/sampling.hpp"

namespace swc {

long sample_complexity(double epsilon, double beta, int n0) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("sample_complexity: epsilon must lie in (0,1)");
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("sample_complexity: beta must lie in (0,1)");
  if (n0 < 1) throw InvalidArgument("sample_complexity: n0 must be >= 1");
  const double e = std::exp(1.0);
  const double n = (1.0 / epsilon) * (e / (e - 1.0)) * (std::log(1.0 / beta) + n0 + 1.0);
  return static_cast<long>(std::ceil(n));
}

double binomial_violation_bound(long N, double epsilon, int d) {
  if (d < 1) throw InvalidArgument("binomial_violation_bound: d must be >= 1");
  if (N < d) {
    throw InvalidArgument("binomial_violation_bound: undersized sample, N=" + std::to_string(N) +
                          " < d=" + std::to_string(d));
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw InvalidArgument("binomial_violation_bound: epsilon must lie in [0,1]");
  }
  if (epsilon == 0.0) return 1.0;
  if (epsilon == 1.0) return 0.0;  // only k = N contributes and N >= d
  const double log_eps = std::log(epsilon);
  const double log_rest = std::log1p(-epsilon);
  const double lg_n = std::lgamma(static_cast<double>(N) + 1.0);
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(d));
  double mx = -INFINITY;
  for (int k = 0; k < d; ++k) {
    const double lk = lg_n - std::lgamma(k + 1.0) - std::lgamma(static_cast<double>(N - k) + 1.0) +
                      k * log_eps + static_cast<double>(N - k) * log_rest;
    logs.push_back(lk);
    mx = std::max(mx, lk);
  }
  double s = 0.0;
  for (double lk : logs) s += std::exp(lk - mx);
  const double v = std::exp(mx + std::log(s));
  return std::min(1.0, std::max(0.0, v));
}

long min_samples_exact(double epsilon, double beta, int d) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("min_samples_exact: epsilon must lie in (0,1)");
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("min_samples_exact: beta must lie in (0,1)");
  if (d < 1) throw InvalidArgument("min_samples_exact: d must be >= 1");
  long lo = d;
  if (binomial_violation_bound(lo, epsilon, d) <= beta) return lo;
  long hi = lo;
  while (binomial_violation_bound(hi, epsilon, d) > beta) {
    lo = hi;
    hi *= 2;
  }
  // bound(lo) > beta >= bound(hi)
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (binomial_violation_bound(mid, epsilon, d) <= beta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

long uniform_int(Rng& rng, long lo, long hi) {
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<long>(rng());
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
  std::uint64_t v = 0;
  do {
    v = rng();
  } while (v >= limit);
  return lo + static_cast<long>(v % range);
}

std::vector<double> draw_stage(const StageSupport& support, Rng& rng) {
  return std::visit(
      [&](const auto& s) -> std::vector<double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxSupport>) {
          std::vector<double> xi(s.nominal.size());
          for (std::size_t k = 0; k < xi.size(); ++k) {
            const double lo = s.lower(k);
            xi[k] = lo + uniform01(rng) * (s.upper(k) - lo);
          }
          return xi;
        } else if constexpr (std::is_same_v<T, IntegerBoxSupport>) {
          std::vector<double> xi(s.lower.size());
          for (std::size_t k = 0; k < xi.size(); ++k) {
            xi[k] = static_cast<double>(uniform_int(rng, s.lower[k], s.upper[k]));
          }
          return xi;
        } else {
          const long idx = uniform_int(rng, 0, static_cast<long>(s.values.size()) - 1);
          return s.values[static_cast<std::size_t>(idx)];
        }
      },
      support);
}

PathSampler uniform_sampler(const UncertaintySet& set) {
  return [set](Rng& rng) {
    ScenarioPath p;
    p.realizations.reserve(static_cast<std::size_t>(set.periods()));
    for (int t = 1; t <= set.periods(); ++t) p.realizations.push_back(draw_stage(set.stage(t), rng));
    return p;
  };
}

std::vector<ScenarioPath> draw_paths(const PathSampler& sampler, long N, std::uint64_t seed) {
  if (N < 1) throw InvalidArgument("draw_paths: N must be >= 1");
  Rng rng(seed);
  std::vector<ScenarioPath> paths;
  paths.reserve(static_cast<std::size_t>(N));
  for (long i = 0; i < N; ++i) paths.push_back(sampler(rng));
  return paths;
}

std::vector<ScenarioPath> draw_paths(const UncertaintySet& set, long N, std::uint64_t seed) {
  return draw_paths(uniform_sampler(set), N, seed);
}

}  // namespace swc
