#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "swc/inventory.hpp"
#include "swc/sampling.hpp"

namespace swc {
namespace {

TEST(SampleComplexity, ReproducesTable) {
  const std::vector<double> eps = paper_epsilons();
  const std::vector<long> expected{63, 95, 189, 377, 1884, 3768, 18838, 37676, 75352};
  ASSERT_EQ(eps.size(), expected.size());
  for (std::size_t k = 0; k < eps.size(); ++k) {
    EXPECT_EQ(sample_complexity(eps[k], 0.001, 4), expected[k]) << eps[k];
  }
}

TEST(SampleComplexity, MonotoneInEachArgument) {
  long prev = 0;
  for (double e : {0.5, 0.3, 0.1, 0.05, 0.01}) {
    const long n = sample_complexity(e, 0.01, 3);
    EXPECT_GT(n, prev);
    prev = n;
  }
  EXPECT_LT(sample_complexity(0.1, 0.1, 3), sample_complexity(0.1, 0.001, 3));
  EXPECT_LT(sample_complexity(0.1, 0.01, 1), sample_complexity(0.1, 0.01, 5));
}

TEST(SampleComplexity, RejectsBadArguments) {
  EXPECT_THROW(sample_complexity(0.0, 0.1, 1), InvalidArgument);
  EXPECT_THROW(sample_complexity(0.1, 1.0, 1), InvalidArgument);
  EXPECT_THROW(sample_complexity(0.1, 0.1, 0), InvalidArgument);
}

TEST(BinomialBound, KnownValues) {
  EXPECT_NEAR(binomial_violation_bound(10, 0.1, 1), 0.3486784401, 1e-12);
  // 0.5^4 (1 + 4) = 5/16
  EXPECT_NEAR(binomial_violation_bound(4, 0.5, 2), 0.3125, 1e-12);
  EXPECT_DOUBLE_EQ(binomial_violation_bound(5, 0.0, 1), 1.0);
  EXPECT_DOUBLE_EQ(binomial_violation_bound(5, 1.0, 1), 0.0);
  EXPECT_THROW(binomial_violation_bound(2, 0.1, 3), InvalidArgument);
}

TEST(BinomialBound, DecreasesInN) {
  double prev = 1.0;
  for (long N = 5; N < 400; N += 13) {
    const double b = binomial_violation_bound(N, 0.05, 5);
    EXPECT_LE(b, prev + 1e-15);
    prev = b;
  }
}

TEST(MinSamplesExact, KnownValues) {
  EXPECT_EQ(min_samples_exact(0.1, 0.5, 1), 7);
  EXPECT_EQ(min_samples_exact(0.5, 0.001, 1), 10);
}

TEST(MinSamplesExact, IsSmallestAndBelowFormula) {
  for (double e : {0.3, 0.1, 0.05}) {
    for (int d : {1, 3, 5}) {
      const long n = min_samples_exact(e, 0.001, d);
      EXPECT_LE(binomial_violation_bound(n, e, d), 0.001);
      if (n > d) {
        EXPECT_GT(binomial_violation_bound(n - 1, e, d), 0.001);
      }
      EXPECT_LE(n, sample_complexity(e, 0.001, d - 1 > 0 ? d - 1 : 1) + 1);
    }
  }
}

TEST(DeriveSeed, DistinctAndStable) {
  EXPECT_EQ(derive_seed(1, 1), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 1), derive_seed(2, 1));
  EXPECT_NE(derive_seed(1, 1), 1u);
}

TEST(Uniform, RangesAndPortableStream) {
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const long k = uniform_int(rng, -2, 3);
    EXPECT_GE(k, -2);
    EXPECT_LE(k, 3);
  }
  // Defined by mt19937_64 output alone.
  Rng a(5);
  const std::uint64_t raw = Rng(5)();
  EXPECT_DOUBLE_EQ(uniform01(a), static_cast<double>(raw >> 11) * 0x1.0p-53);
}

TEST(Uniform, IntegerDrawsRoughlyUniform) {
  Rng rng(3);
  std::map<long, int> count;
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++count[uniform_int(rng, 1, 6)];
  ASSERT_EQ(count.size(), 6u);
  for (const auto& [k, c] : count) EXPECT_NEAR(c, n / 6.0, 5 * std::sqrt(n / 6.0)) << k;
}

TEST(DrawPaths, DeterministicAndInsideSupport) {
  UncertaintySet set;
  set.supports.push_back(BoxSupport{{100.0}, 0.3});
  set.supports.push_back(IntegerBoxSupport{{1, 1}, {5, 5}});
  set.supports.push_back(DiscreteSupport{{{0.0}, {1.0}}});
  const auto a = draw_paths(set, 50, 11);
  const auto b = draw_paths(set, 50, 11);
  const auto c = draw_paths(set, 50, 12);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& p : a) EXPECT_TRUE(contains(set, p));
  // Prefix property: the first k paths do not depend on N.
  const auto longer = draw_paths(set, 80, 11);
  EXPECT_TRUE(std::equal(a.begin(), a.end(), longer.begin()));
  EXPECT_THROW(draw_paths(set, 0, 1), InvalidArgument);
}

TEST(DrawPaths, BoxMeanNearNominal) {
  UncertaintySet set;
  set.supports.push_back(BoxSupport{{50.0}, 0.2});
  const auto paths = draw_paths(set, 20000, 9);
  double s = 0.0;
  for (const auto& p : paths) s += p.realizations[0][0];
  // sd of a uniform on [40, 60] is 20/sqrt(12)
  EXPECT_NEAR(s / paths.size(), 50.0, 5 * (20.0 / std::sqrt(12.0)) / std::sqrt(20000.0));
}

}  // namespace
}  // namespace swc
