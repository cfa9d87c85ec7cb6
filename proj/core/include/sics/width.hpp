#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sics/solver.hpp"

namespace sics {

// Product of intervals [lower_i, upper_i] describing the subdifferential of a
// separable objective at x*. Bounds may be infinite.
struct SubdifferentialBox {
  Vector lower;
  Vector upper;
  // False when the objective's hypotheses for cone(subdifferential) to be
  // the normal cone do not hold; see notes.
  bool normal_cone_exact = true;
  std::vector<std::string> notes;
};

SubdifferentialBox subdifferential_box(const Objective& objective, const SparseSignal& signal);

// sum_i dist(g_i, [t lower_i, t upper_i])^2
double dist_to_scaled_box(const Vector& g, const SubdifferentialBox& box, double t);

// min over t >= 0 of dist_to_scaled_box(g, box, t), by ternary search on the
// convex function of t after expanding the bracket until its slope is
// nonnegative.
double min_dist_to_cone(const Vector& g, const SubdifferentialBox& box, double tolerance = 1e-8);

struct WidthEstimate {
  double delta_hat = 0.0;  // statistical dimension estimate
  double std_err = 0.0;
  std::int64_t samples = 0;
};

// Monte Carlo mean of min_t dist^2(g, t * box) over standard Gaussian g.
// Sample k draws from substream derive_seed(seed, k); the result does not
// depend on `workers`.
WidthEstimate estimate_statistical_dimension(const SubdifferentialBox& box, std::int64_t samples,
                                             std::uint64_t seed, unsigned workers = 1);

// Box construction plus estimation. Throws PreconditionViolation for l1-l1
// without bad components, where the box does not generate the normal cone.
WidthEstimate estimate_statistical_dimension(const Objective& objective, const SparseSignal& signal,
                                             std::int64_t samples, std::uint64_t seed,
                                             unsigned workers = 1);

// Pairwise (cascade) summation; order is fixed by the input.
double pairwise_sum(const double* values, std::size_t count) noexcept;

}  // namespace sics
