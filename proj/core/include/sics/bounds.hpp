#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sics/partition.hpp"

namespace sics {

enum class Scheme { CS, L1L1, L1L2 };

std::string_view to_string(Scheme scheme) noexcept;
Scheme parse_scheme(std::string_view text);

// Upper bound on the squared Gaussian width of the tangent cone, and the
// number of Gaussian measurements it implies (m >= width^2 + 1).
struct BoundReport {
  Scheme scheme = Scheme::CS;
  double width_sq_bound = 0.0;
  // 0 when the bound is not finite.
  std::int64_t minimal_m = 0;
  bool assumptions_ok = true;
  std::vector<std::string> assumption_notes;
};

// Smallest integer m with m >= width_sq + 1. Values within 1e-9 of an
// integer count as that integer.
std::int64_t minimal_measurements(double width_sq);

// 2 s ln(n/s) + 7/5 s. Throws PreconditionViolation unless 1 <= s <= n.
BoundReport cs_bound(Index n, Index s);

// 2 h_bar ln(n / (s + xi/2)) + 7/5 (s + xi/2). Failed assumptions are
// reported in the notes; the value is still evaluated formally.
BoundReport l1l1_bound(Index n, Index s, Index h_bar, Index xi, double beta = 1.0);
// Adds the check that some index has x_i* = w_i = 0.
BoundReport l1l1_bound(const SideInfoProfile& profile, double beta = 1.0);

// (q - s)/(n - q) <= |1 - w_bar| exp(2 w_bar ln(n/q) (w_bar/2 - 1)).
// Throws InvalidArgument when q >= n.
bool l1l2_assumption(Index n, const SideInfoProfile& profile);

// 2 v ln(n/q) + s + 2K + 4/5 q from explicit scalars. Only q < n is checked.
BoundReport l1l2_bound(Index n, Index s, Index q, Index K, double v);
// Full check of the hypotheses (x* != 0, q < n, curvature condition,
// subdifferential condition for beta) from a profile.
BoundReport l1l2_bound(const SideInfoProfile& profile, double beta = 1.0);

// All three reports for a profile. The CS report carries
// assumptions_ok = false instead of throwing when s = 0.
std::vector<BoundReport> all_bounds(const SideInfoProfile& profile, double beta = 1.0);

// Expected Euclidean norm of a standard Gaussian vector in R^m,
// sqrt(2) Gamma((m+1)/2) / Gamma(m/2).
double lambda_m(std::int64_t m);

enum class ProbabilityForm {
  WidthGap,     // 1 - exp(-(lambda_m - w)^2 / 2), w = sqrt(width bound)
  LiteralGapM,  // 1 - exp(-(lambda_m - m)^2 / 2), as printed for the
                // side-information theorems
};

struct SuccessProbability {
  double value = 0.0;
  bool below_threshold = false;
  // The width bound stands in for the unknown width, so the value is a
  // proxy rather than a certified floor.
  bool uses_bound_proxy = true;
  std::string note;
};

SuccessProbability success_probability_floor(double width_sq_bound, std::int64_t m,
                                             ProbabilityForm form = ProbabilityForm::WidthGap);

}  // namespace sics
