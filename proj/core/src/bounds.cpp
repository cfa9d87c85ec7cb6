#include "sics/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sics/error.hpp"

namespace sics {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void finalize(BoundReport& report) {
  report.minimal_m = minimal_measurements(report.width_sq_bound);
  if (!std::isfinite(report.width_sq_bound)) {
    report.assumptions_ok = false;
    report.assumption_notes.emplace_back("bound is not finite");
  }
}

bool reject_beta(BoundReport& report, double beta) {
  if (beta == 1.0) return false;
  report.width_sq_bound = kNaN;
  report.minimal_m = 0;
  report.assumptions_ok = false;
  report.assumption_notes.emplace_back("not supported: only beta = 1 bounds are implemented");
  return true;
}

}  // namespace

std::string_view to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::CS: return "cs";
    case Scheme::L1L1: return "l1l1";
    case Scheme::L1L2: return "l1l2";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "cs" || text == "l1") return Scheme::CS;
  if (text == "l1l1") return Scheme::L1L1;
  if (text == "l1l2") return Scheme::L1L2;
  throw InvalidArgument("unknown scheme '" + std::string(text) + "'");
}

std::int64_t minimal_measurements(double width_sq) {
  if (!std::isfinite(width_sq)) return 0;
  const double m = std::ceil(width_sq + 1.0 - 1e-9);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(m));
}

BoundReport cs_bound(Index n, Index s) {
  if (s < 1 || s > n) {
    throw PreconditionViolation("the CS bound needs 1 <= s <= n (x* != 0); got s = " +
                                std::to_string(s) + ", n = " + std::to_string(n));
  }
  BoundReport report;
  report.scheme = Scheme::CS;
  const double nd = static_cast<double>(n);
  const double sd = static_cast<double>(s);
  report.width_sq_bound = 2.0 * sd * std::log(nd / sd) + 1.4 * sd;
  finalize(report);
  return report;
}

BoundReport l1l1_bound(Index n, Index s, Index h_bar, Index xi, double beta) {
  BoundReport report;
  report.scheme = Scheme::L1L1;
  if (reject_beta(report, beta)) return report;
  if (h_bar <= 0) {
    report.assumptions_ok = false;
    report.assumption_notes.emplace_back(
        "no bad components (h_bar = 0): the subdifferential need not generate the normal cone");
  }
  const double effective = static_cast<double>(s) + 0.5 * static_cast<double>(xi);
  if (effective <= 0.0) {
    report.assumptions_ok = false;
    report.assumption_notes.emplace_back("s + xi/2 <= 0: logarithm undefined");
    report.width_sq_bound = kNaN;
  } else {
    report.width_sq_bound = 2.0 * static_cast<double>(h_bar) *
                                std::log(static_cast<double>(n) / effective) +
                            1.4 * effective;
  }
  finalize(report);
  return report;
}

BoundReport l1l1_bound(const SideInfoProfile& profile, double beta) {
  BoundReport report = l1l1_bound(profile.n, profile.s, profile.h_bar, profile.xi, beta);
  if (beta == 1.0 && profile.n_zero_both == 0) {
    report.assumptions_ok = false;
    report.assumption_notes.emplace_back(
        "no index with x_i* = w_i = 0: the bound can evaluate to -infinity");
  }
  return report;
}

bool l1l2_assumption(Index n, const SideInfoProfile& profile) {
  if (profile.q >= n) {
    throw InvalidArgument("curvature assumption needs q < n; got q = " + std::to_string(profile.q));
  }
  const double lhs = static_cast<double>(profile.q - profile.s) / static_cast<double>(n - profile.q);
  const double wb = profile.w_bar;
  const double rhs = std::abs(1.0 - wb) *
                     std::exp(2.0 * wb * std::log(static_cast<double>(n) / static_cast<double>(profile.q)) *
                              (0.5 * wb - 1.0));
  return lhs <= rhs;
}

BoundReport l1l2_bound(Index n, Index s, Index q, Index K, double v) {
  if (q >= n) {
    throw InvalidArgument("the l1-l2 bound needs q < n; got q = " + std::to_string(q) +
                          ", n = " + std::to_string(n));
  }
  if (q < 1) throw InvalidArgument("the l1-l2 bound needs q >= 1");
  BoundReport report;
  report.scheme = Scheme::L1L2;
  const double qd = static_cast<double>(q);
  report.width_sq_bound = 2.0 * v * std::log(static_cast<double>(n) / qd) +
                          static_cast<double>(s) + 2.0 * static_cast<double>(K) + 0.8 * qd;
  report.assumption_notes.emplace_back(
      "computed from scalars: curvature and subdifferential conditions not evaluated");
  finalize(report);
  return report;
}

BoundReport l1l2_bound(const SideInfoProfile& profile, double beta) {
  BoundReport probe;
  probe.scheme = Scheme::L1L2;
  if (reject_beta(probe, beta)) return probe;
  if (profile.q >= profile.n) {
    throw InvalidArgument("the l1-l2 bound needs q < n; got q = " + std::to_string(profile.q));
  }
  BoundReport report;
  report.scheme = Scheme::L1L2;
  if (profile.s == 0) {
    report.assumptions_ok = false;
    report.assumption_notes.emplace_back("x* = 0");
  }
  if (profile.q >= 1) {
    const double qd = static_cast<double>(profile.q);
    report.width_sq_bound = 2.0 * profile.v * std::log(static_cast<double>(profile.n) / qd) +
                            static_cast<double>(profile.s) + 2.0 * static_cast<double>(profile.K) +
                            0.8 * qd;
  } else {
    report.width_sq_bound = kNaN;
  }
  if (!l1l2_assumption(profile.n, profile)) {
    report.assumptions_ok = false;
    report.assumption_notes.emplace_back(
        "curvature assumption (q-s)/(n-q) <= |1-w_bar| exp(...) fails");
  }
  const bool subdiff_ok =
      profile.w_bar < 1.0 ||
      std::any_of(profile.l1l2_critical_betas.begin(), profile.l1l2_critical_betas.end(),
                  [beta](double b) { return b != beta; });
  if (!subdiff_ok) {
    report.assumptions_ok = false;
    report.assumption_notes.emplace_back(
        "subdifferential condition fails: w_bar >= 1 and beta = sign(x_i*)/(w_i - x_i*) on all of I n J");
  }
  finalize(report);
  return report;
}

std::vector<BoundReport> all_bounds(const SideInfoProfile& profile, double beta) {
  std::vector<BoundReport> out;
  try {
    out.push_back(cs_bound(profile.n, profile.s));
  } catch (const PreconditionViolation& e) {
    BoundReport r;
    r.scheme = Scheme::CS;
    r.width_sq_bound = kNaN;
    r.assumptions_ok = false;
    r.assumption_notes.emplace_back(e.what());
    out.push_back(std::move(r));
  }
  out.push_back(l1l1_bound(profile, beta));
  try {
    out.push_back(l1l2_bound(profile, beta));
  } catch (const InvalidArgument& e) {
    BoundReport r;
    r.scheme = Scheme::L1L2;
    r.width_sq_bound = kNaN;
    r.assumptions_ok = false;
    r.assumption_notes.emplace_back(e.what());
    out.push_back(std::move(r));
  }
  return out;
}

double lambda_m(std::int64_t m) {
  if (m < 1) throw InvalidArgument("lambda_m needs m >= 1");
  const double md = static_cast<double>(m);
  return std::sqrt(2.0) * std::exp(std::lgamma(0.5 * (md + 1.0)) - std::lgamma(0.5 * md));
}

SuccessProbability success_probability_floor(double width_sq_bound, std::int64_t m,
                                             ProbabilityForm form) {
  if (!(width_sq_bound >= 0.0)) throw InvalidArgument("width bound must be a nonnegative number");
  SuccessProbability out;
  if (m < 1 || static_cast<double>(m) < width_sq_bound + 1.0 - 1e-9) {
    out.value = 0.0;
    out.below_threshold = true;
    out.note = "m below width^2 + 1: no guarantee";
    return out;
  }
  const double lm = lambda_m(m);
  const double gap = form == ProbabilityForm::WidthGap ? lm - std::sqrt(width_sq_bound)
                                                       : lm - static_cast<double>(m);
  out.value = 1.0 - std::exp(-0.5 * gap * gap);
  out.note = "width bound used as a proxy for the width";
  return out;
}

}  // namespace sics
