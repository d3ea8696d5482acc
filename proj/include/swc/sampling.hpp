#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "swc/core_model.hpp"

namespace swc {

using Rng = std::mt19937_64;

// N such that, with confidence 1 - beta, the sampled solution violates at most
// a fraction epsilon:  ceil( (1/eps) * e/(e-1) * (ln(1/beta) + n0 + 1) ).
long sample_complexity(double epsilon, double beta, int n0);

// sum_{k=0}^{d-1} C(N,k) eps^k (1-eps)^(N-k), accumulated in log space.
double binomial_violation_bound(long N, double epsilon, int d);

// Smallest N with binomial_violation_bound(N, epsilon, d) <= beta.
long min_samples_exact(double epsilon, double beta, int d);

// Deterministic seed splitting (splitmix64 of base and stream id).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Uniform double in [0, 1) from the top 53 bits; platform independent.
double uniform01(Rng& rng);
// Uniform integer in [lo, hi] by rejection; platform independent.
long uniform_int(Rng& rng, long lo, long hi);

// Draws one realization of the stage-t support (t = 1..H-1), uniformly:
// continuous on boxes, over lattice points on integer boxes, over listed
// values on discrete supports.
std::vector<double> draw_stage(const StageSupport& support, Rng& rng);

using PathSampler = std::function<ScenarioPath(Rng&)>;

PathSampler uniform_sampler(const UncertaintySet& set);

// N iid paths; stages are drawn in order from one generator seeded with `seed`.
std::vector<ScenarioPath> draw_paths(const UncertaintySet& set, long N, std::uint64_t seed);
std::vector<ScenarioPath> draw_paths(const PathSampler& sampler, long N, std::uint64_t seed);

}  // namespace swc
