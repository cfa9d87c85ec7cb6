#include "sics/width.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "sics/error.hpp"
#include "sics/partition.hpp"
#include "sics/rng.hpp"

namespace sics {

namespace {

struct Interval {
  double lo;
  double hi;
};

Interval abs_subdiff(double x) {
  if (x > 0.0) return {1.0, 1.0};
  if (x < 0.0) return {-1.0, -1.0};
  return {-1.0, 1.0};
}

// Derivative in t of dist_to_scaled_box.
double slope(const Vector& g, const SubdifferentialBox& box, double t) {
  double d = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    const double lo = t * box.lower[i];
    const double hi = t * box.upper[i];
    if (g[i] < lo) {
      d += 2.0 * (lo - g[i]) * box.lower[i];
    } else if (g[i] > hi) {
      d += 2.0 * (hi - g[i]) * box.upper[i];
    }
  }
  return d;
}

}  // namespace

SubdifferentialBox subdifferential_box(const Objective& objective, const SparseSignal& signal) {
  const Index n = signal.n();
  const Vector& x = signal.values();
  if (objective.w() && objective.w()->size() != n) {
    throw InvalidArgument("objective side information length differs from the signal");
  }
  SubdifferentialBox box;
  box.lower.resize(n);
  box.upper.resize(n);
  const double beta = objective.beta();
  for (Index i = 0; i < n; ++i) {
    Interval a = abs_subdiff(x[i]);
    switch (objective.kind()) {
      case ObjectiveKind::L1: break;
      case ObjectiveKind::L1L1: {
        const Interval b = abs_subdiff(x[i] - (*objective.w())[i]);
        a.lo += beta * b.lo;
        a.hi += beta * b.hi;
        break;
      }
      case ObjectiveKind::L1L2: {
        const double shift = beta * (x[i] - (*objective.w())[i]);
        a.lo += shift;
        a.hi += shift;
        break;
      }
    }
    box.lower[i] = a.lo;
    box.upper[i] = a.hi;
  }

  if (signal.s() == 0 && objective.kind() != ObjectiveKind::L1L1) {
    box.normal_cone_exact = false;
    box.notes.emplace_back("x* = 0");
  }
  if (objective.kind() != ObjectiveKind::L1) {
    const SideInfoProfile p = profile(signal, SideInformation(*objective.w()));
    if (objective.kind() == ObjectiveKind::L1L1 && p.h_bar == 0) {
      box.normal_cone_exact = false;
      box.notes.emplace_back("no bad components: cone of the subdifferential may differ from the normal cone");
    }
    if (objective.kind() == ObjectiveKind::L1L2) {
      const bool ok = p.w_bar < 1.0 ||
                      std::any_of(p.l1l2_critical_betas.begin(), p.l1l2_critical_betas.end(),
                                  [beta](double b) { return b != beta; });
      if (!ok) {
        box.normal_cone_exact = false;
        box.notes.emplace_back("subdifferential condition for l1-l2 fails");
      }
    }
  }
  return box;
}

double dist_to_scaled_box(const Vector& g, const SubdifferentialBox& box, double t) {
  if (g.size() != box.lower.size() || g.size() != box.upper.size()) {
    throw InvalidArgument("sample and box dimensions differ");
  }
  if (!(t >= 0.0)) throw InvalidArgument("scale t must be nonnegative");
  double total = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    const double lo = t * box.lower[i];
    const double hi = t * box.upper[i];
    double d = 0.0;
    if (g[i] < lo) {
      d = lo - g[i];
    } else if (g[i] > hi) {
      d = g[i] - hi;
    }
    total += d * d;
  }
  return total;
}

double min_dist_to_cone(const Vector& g, const SubdifferentialBox& box, double tolerance) {
  constexpr double kMaxScale = 1e12;
  double t_max = 1.0;
  while (slope(g, box, t_max) < 0.0 && t_max < kMaxScale) t_max *= 2.0;

  constexpr double kInvPhi = 0.6180339887498949;
  double a = 0.0;
  double b = t_max;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = dist_to_scaled_box(g, box, c);
  double fd = dist_to_scaled_box(g, box, d);
  while (b - a > tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = dist_to_scaled_box(g, box, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = dist_to_scaled_box(g, box, d);
    }
  }
  const double mid = 0.5 * (a + b);
  return std::min({dist_to_scaled_box(g, box, mid), fc, fd, dist_to_scaled_box(g, box, 0.0)});
}

double pairwise_sum(const double* values, std::size_t count) noexcept {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += values[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

WidthEstimate estimate_statistical_dimension(const SubdifferentialBox& box, std::int64_t samples,
                                             std::uint64_t seed, unsigned workers) {
  if (samples < 1) throw InvalidArgument("samples must be at least 1");
  if (box.lower.size() != box.upper.size()) throw InvalidArgument("malformed box");
  const Index n = box.lower.size();
  const auto count = static_cast<std::size_t>(samples);
  std::vector<double> values(count);

  const auto run = [&](std::size_t begin, std::size_t end) {
    Vector g(n);
    for (std::size_t k = begin; k < end; ++k) {
      Rng rng(derive_seed(seed, k));
      for (Index i = 0; i < n; ++i) g[i] = rng.normal();
      values[k] = min_dist_to_cone(g, box);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (threads == 1) {
    run(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(count, t * chunk);
      const std::size_t end = std::min(count, begin + chunk);
      pool.emplace_back(run, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  WidthEstimate est;
  est.samples = samples;
  const double mean = pairwise_sum(values.data(), count) / static_cast<double>(count);
  est.delta_hat = mean;
  if (count > 1) {
    std::vector<double> sq(count);
    for (std::size_t k = 0; k < count; ++k) sq[k] = (values[k] - mean) * (values[k] - mean);
    const double var = pairwise_sum(sq.data(), count) / static_cast<double>(count - 1);
    est.std_err = std::sqrt(var / static_cast<double>(count));
  }
  return est;
}

WidthEstimate estimate_statistical_dimension(const Objective& objective, const SparseSignal& signal,
                                             std::int64_t samples, std::uint64_t seed,
                                             unsigned workers) {
  const SubdifferentialBox box = subdifferential_box(objective, signal);
  if (objective.kind() == ObjectiveKind::L1L1 && !box.normal_cone_exact) {
    throw PreconditionViolation(
        "l1-l1 width estimation needs at least one bad component (h_bar > 0)");
  }
  return estimate_statistical_dimension(box, samples, seed, workers);
}

}  // namespace sics
