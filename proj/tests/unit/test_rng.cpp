#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "sics/rng.hpp"

using sics::Rng;

TEST(Rng, SameSeedSameSequence) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
  }
  Rng c(7), d(7);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(c.normal(), d.normal());
  }
}

TEST(Rng, DeriveSeedInjectiveOverCounters) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 100000; ++k) seen.insert(sics::derive_seed(1, k));
  EXPECT_EQ(seen.size(), 100000u);
  EXPECT_NE(sics::derive_seed(1, 0), sics::derive_seed(2, 0));
}

TEST(Rng, UniformRange) {
  Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform(0.1, 0.9);
    ASSERT_GE(v, 0.1);
    ASSERT_LT(v, 0.9);
  }
}

TEST(Rng, UniformIndexCoversRange) {
  Rng rng(11);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto k = rng.uniform_index(7);
    ASSERT_LT(k, 7u);
    ++hits[k];
  }
  for (int h : hits) EXPECT_NEAR(h, 10000, 500);
}

TEST(Rng, NormalMoments) {
  Rng rng(5);
  const int N = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < N; ++i) {
    const double g = rng.normal();
    sum += g;
    sq += g * g;
  }
  const double mean = sum / N;
  const double var = sq / N - mean * mean;
  EXPECT_LT(std::abs(mean), 5.0 / std::sqrt(N));
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(Rng, SignIsBalanced) {
  Rng rng(9);
  int plus = 0;
  for (int i = 0; i < 20000; ++i) {
    const double s = rng.sign();
    ASSERT_TRUE(s == 1.0 || s == -1.0);
    plus += s > 0;
  }
  EXPECT_NEAR(plus, 10000, 400);
}
