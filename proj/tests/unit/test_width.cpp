#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sics/bounds.hpp"
#include "sics/error.hpp"
#include "sics/partition.hpp"
#include "sics/rng.hpp"
#include "sics/width.hpp"

using namespace sics;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

SubdifferentialBox random_box(Rng& rng, Index n) {
  SubdifferentialBox box;
  box.lower.resize(n);
  box.upper.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform() < 0.5 ? a : rng.uniform(-3.0, 3.0);
    box.lower[i] = std::min(a, b);
    box.upper[i] = std::max(a, b);
  }
  return box;
}

Vector gaussian(Rng& rng, Index n) {
  Vector g(n);
  for (Index i = 0; i < n; ++i) g[i] = rng.normal();
  return g;
}

}  // namespace

TEST(Box, L1Example) {
  const SubdifferentialBox b = subdifferential_box(Objective::l1(), SparseSignal(vec({0, 1})));
  EXPECT_EQ(b.lower, vec({-1, 1}));
  EXPECT_EQ(b.upper, vec({1, 1}));
}

TEST(Box, L1L1BadComponent) {
  const SubdifferentialBox b =
      subdifferential_box(Objective::l1l1(vec({0, 0.5})), SparseSignal(vec({0, 1})));
  EXPECT_EQ(b.lower[1], 2.0);
  EXPECT_EQ(b.upper[1], 2.0);
  EXPECT_EQ(b.lower[0], -2.0);
  EXPECT_EQ(b.upper[0], 2.0);
  EXPECT_TRUE(b.normal_cone_exact);
}

TEST(Box, L1L1PerCoordinateSignCalculus) {
  // Interval at each coordinate from the sign rules of |u| and |u - w|.
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto pair = fixture::make_pair(30, 6, fixture::counts(2, 2, 2, 3), 400 + k);
    const double beta = rng.uniform(0.2, 3.0);
    const SubdifferentialBox b = subdifferential_box(Objective::l1l1(pair.w.values(), beta), pair.x);
    for (Index i = 0; i < 30; ++i) {
      const double x = pair.x.values()[i];
      const double d = x - pair.w.values()[i];
      const double lo = (x == 0 ? -1.0 : std::copysign(1.0, x)) + beta * (d == 0 ? -1.0 : std::copysign(1.0, d));
      const double hi = (x == 0 ? 1.0 : std::copysign(1.0, x)) + beta * (d == 0 ? 1.0 : std::copysign(1.0, d));
      ASSERT_DOUBLE_EQ(b.lower[i], lo);
      ASSERT_DOUBLE_EQ(b.upper[i], hi);
    }
  }
}

TEST(Box, L1L2Shift) {
  const SubdifferentialBox b =
      subdifferential_box(Objective::l1l2(vec({0, 1.6})), SparseSignal(vec({0, 1})));
  EXPECT_NEAR(b.lower[1], 0.4, 1e-15);
  EXPECT_NEAR(b.upper[1], 0.4, 1e-15);
}

TEST(Box, FlagsL1L1WithoutBadComponents) {
  const SparseSignal x(vec({1, 0, 0}));
  const SubdifferentialBox b = subdifferential_box(Objective::l1l1(vec({1.5, 0, 0})), x);
  EXPECT_FALSE(b.normal_cone_exact);
  EXPECT_THROW(estimate_statistical_dimension(Objective::l1l1(vec({1.5, 0, 0})), x, 10, 1),
               PreconditionViolation);
}

TEST(Distance, Trivial) {
  Rng rng(1);
  const SubdifferentialBox box = random_box(rng, 10);
  const Vector g = gaussian(rng, 10);
  EXPECT_NEAR(dist_to_scaled_box(g, box, 0.0), g.squaredNorm(), 1e-14);
  const Vector inside = 2.0 * (box.lower + box.upper) / 2.0;
  EXPECT_EQ(dist_to_scaled_box(inside, box, 2.0), 0.0);
  EXPECT_THROW(dist_to_scaled_box(g, box, -1.0), InvalidArgument);
}

TEST(Distance, MatchesNaiveLoop) {
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const SubdifferentialBox box = random_box(rng, 12);
    const Vector g = gaussian(rng, 12);
    const double t = rng.uniform(0.0, 5.0);
    ASSERT_NEAR(dist_to_scaled_box(g, box, t), oracle::naive_box_distance(g, box.lower, box.upper, t),
                1e-12);
  }
}

TEST(Distance, ConvexInScale) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const SubdifferentialBox box = random_box(rng, 8);
    const Vector g = gaussian(rng, 8);
    for (double t = 0.05; t < 5.0; t += 0.05) {
      const double mid = dist_to_scaled_box(g, box, t);
      const double avg = 0.5 * (dist_to_scaled_box(g, box, t - 0.05) + dist_to_scaled_box(g, box, t + 0.05));
      ASSERT_LE(mid, avg + 1e-12);
    }
  }
}

TEST(MinDistance, MatchesGridScan) {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const Index n = 6;
    SubdifferentialBox box = random_box(rng, n);
    // Keep the cone pointed so that the minimum is attained at a finite t.
    box.lower[0] = 0.5;
    box.upper[0] = 1.5;
    const Vector g = gaussian(rng, n);
    const double t_hi = 20.0;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= 100000; ++j) {
      best = std::min(best, dist_to_scaled_box(g, box, t_hi * j / 100000.0));
    }
    const double got = min_dist_to_cone(g, box);
    ASSERT_LE(got, best + 1e-6);
    ASSERT_GE(got, best - 1e-6);
  }
}

TEST(Estimator, SubspaceHasItsDimension) {
  // Normal cone of a d-dimensional subspace in R^n: zero on the d subspace
  // coordinates and everything on the rest, so dist^2 = sum over d coords.
  const Index n = 40;
  const Index d = 12;
  SubdifferentialBox box;
  box.lower = Vector::Constant(n, -1e9);
  box.upper = Vector::Constant(n, 1e9);
  box.lower.head(d).setZero();
  box.upper.head(d).setZero();
  const WidthEstimate est = estimate_statistical_dimension(box, 4000, 5);
  EXPECT_NEAR(est.delta_hat, static_cast<double>(d), 3.0 * est.std_err);

  // Direct projection onto the same subspace.
  double sum = 0.0;
  for (std::int64_t k = 0; k < 4000; ++k) {
    Rng rng(derive_seed(5, static_cast<std::uint64_t>(k)));
    Vector g(n);
    for (Index i = 0; i < n; ++i) g[i] = rng.normal();
    sum += g.head(d).squaredNorm();
  }
  EXPECT_NEAR(est.delta_hat, sum / 4000.0, 1e-6);
}

TEST(Estimator, HeadlineL1BelowBound) {
  const auto pair = fixture::make_pair(1000, 70, fixture::counts(11, 11, 48, 6), 7);
  const WidthEstimate l1 = estimate_statistical_dimension(Objective::l1(), pair.x, 2000, 3, 4);
  EXPECT_LE(l1.delta_hat, 471.3 + 3.0 * l1.std_err);
  const WidthEstimate f1 =
      estimate_statistical_dimension(Objective::l1l1(pair.w.values()), pair.x, 2000, 3, 4);
  EXPECT_LE(f1.delta_hat, 134.95 + 1.0 + 3.0 * f1.std_err);
  EXPECT_LT(f1.delta_hat, l1.delta_hat);
}

TEST(Estimator, MonotoneInSparsityOnNestedSupports) {
  const SparseSignal base = generate_signal(100, 10, MagnitudeLaw::SignOnly, 8);
  double prev = 0.0, prev_se = 0.0;
  for (Index s : {1, 5, 10}) {
    Vector v = Vector::Zero(100);
    for (Index k = 0; k < s; ++k) v[base.support()[static_cast<std::size_t>(k)]] = base.values()[base.support()[static_cast<std::size_t>(k)]];
    const WidthEstimate est = estimate_statistical_dimension(Objective::l1(), SparseSignal(v), 2000, 9);
    EXPECT_GE(est.delta_hat + 3.0 * est.std_err + 3.0 * prev_se, prev) << s;
    prev = est.delta_hat;
    prev_se = est.std_err;
  }
}

TEST(Estimator, StandardErrorScaling) {
  const SparseSignal x = generate_signal(200, 20, MagnitudeLaw::SignOnly, 4);
  const SubdifferentialBox box = subdifferential_box(Objective::l1(), x);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const WidthEstimate a = estimate_statistical_dimension(box, 1000, seed);
    const WidthEstimate b = estimate_statistical_dimension(box, 4000, seed + 10);
    EXPECT_NEAR(a.std_err / b.std_err, 2.0, 0.6);
    const WidthEstimate c = estimate_statistical_dimension(box, 2000, seed + 20);
    EXPECT_NEAR(a.std_err / c.std_err, std::sqrt(2.0), 0.3 * std::sqrt(2.0));
  }
}

TEST(Estimator, IndependentOfWorkerCount) {
  const SparseSignal x = generate_signal(150, 15, MagnitudeLaw::Gaussian, 2);
  const SubdifferentialBox box = subdifferential_box(Objective::l1(), x);
  const WidthEstimate a = estimate_statistical_dimension(box, 777, 12, 1);
  const WidthEstimate b = estimate_statistical_dimension(box, 777, 12, 5);
  EXPECT_EQ(a.delta_hat, b.delta_hat);
  EXPECT_EQ(a.std_err, b.std_err);
  EXPECT_EQ(a.samples, 777);
  EXPECT_THROW(estimate_statistical_dimension(box, 0, 1), InvalidArgument);
}

TEST(Estimator, BoundsDominateOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const Index bad = 1 + static_cast<Index>(rng.uniform_index(4));
    const Index good = static_cast<Index>(rng.uniform_index(4));
    const Index extra = static_cast<Index>(rng.uniform_index(3));
    const auto pair = fixture::make_pair(150, 10, fixture::counts(good, bad, 10 - good - bad, extra), seed * 31);
    const SideInfoProfile p = profile(pair.x, pair.w);

    const WidthEstimate l1 = estimate_statistical_dimension(Objective::l1(), pair.x, 1000, seed);
    EXPECT_LE(l1.delta_hat, cs_bound(150, 10).width_sq_bound + 1.0 + 3.0 * l1.std_err);

    const WidthEstimate f1 =
        estimate_statistical_dimension(Objective::l1l1(pair.w.values()), pair.x, 1000, seed);
    EXPECT_LE(f1.delta_hat, l1l1_bound(p).width_sq_bound + 1.0 + 3.0 * f1.std_err);

    const BoundReport b2 = l1l2_bound(p);
    if (b2.assumptions_ok) {
      const WidthEstimate f2 =
          estimate_statistical_dimension(Objective::l1l2(pair.w.values()), pair.x, 1000, seed);
      EXPECT_LE(f2.delta_hat, b2.width_sq_bound + 1.0 + 3.0 * f2.std_err);
    }
  }
}

TEST(PairwiseSum, MatchesExactSmallIntegers) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(v.data(), v.size()), 500500.0);
  EXPECT_EQ(pairwise_sum(v.data(), 0), 0.0);
}
