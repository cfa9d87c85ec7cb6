#include "sics/prox.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sics/error.hpp"

namespace sics::prox {

namespace {

void check(double t, double beta) {
  if (!(t > 0.0)) throw InvalidArgument("prox step t must be positive");
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
}

double sgn(double x) noexcept { return (x > 0.0) - (x < 0.0); }

}  // namespace

double l1(double v, double t) noexcept {
  const double a = std::abs(v) - t;
  return a > 0.0 ? std::copysign(a, v) : 0.0;
}

double l1l1(double v, double w, double beta, double t) noexcept {
  const auto phi = [&](double u) {
    return std::abs(u) + beta * std::abs(u - w) + (u - v) * (u - v) / (2.0 * t);
  };
  const double lo = std::min(0.0, w);
  const double hi = std::max(0.0, w);

  // Breakpoints first, then one stationary point per open interval where the
  // objective is smooth: u = v - t (sign(u) + beta sign(u - w)).
  std::array<double, 5> candidates{};
  std::size_t count = 0;
  candidates[count++] = 0.0;
  if (w != 0.0) candidates[count++] = w;
  const double left = v + t * (1.0 + beta);
  if (left < lo) candidates[count++] = left;
  const double right = v - t * (1.0 + beta);
  if (right > hi) candidates[count++] = right;
  if (lo < hi) {
    // Between the kinks sign(u) = sign(w) and sign(u - w) = -sign(w).
    const double mid = v - t * sgn(w) * (1.0 - beta);
    if (mid > lo && mid < hi) candidates[count++] = mid;
  }

  double best = candidates[0];
  double best_val = phi(best);
  for (std::size_t k = 1; k < count; ++k) {
    const double u = candidates[k];
    const double val = phi(u);
    const double tol = 1e-12 * (1.0 + std::abs(best_val));
    if (val < best_val - tol) {
      best = u;
      best_val = val;
    } else if (std::abs(val - best_val) <= tol) {
      // Ties: prefer zero, then w.
      const bool closer_zero = std::abs(u) < std::abs(best);
      const bool same_zero = std::abs(u) == std::abs(best);
      if (closer_zero || (same_zero && std::abs(u - w) < std::abs(best - w))) {
        best = u;
        best_val = std::min(val, best_val);
      }
    }
  }
  return best;
}

double l1l2(double v, double w, double beta, double t) noexcept {
  const double denom = 1.0 + t * beta;
  return l1((v + t * beta * w) / denom, t / denom);
}

Eigen::VectorXd l1(const Eigen::VectorXd& v, double t) {
  check(t, 1.0);
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = l1(v[i], t);
  return out;
}

Eigen::VectorXd l1l1(const Eigen::VectorXd& v, const Eigen::VectorXd& w, double beta, double t) {
  check(t, beta);
  if (v.size() != w.size()) throw InvalidArgument("prox_l1l1: length mismatch");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = l1l1(v[i], w[i], beta, t);
  return out;
}

Eigen::VectorXd l1l2(const Eigen::VectorXd& v, const Eigen::VectorXd& w, double beta, double t) {
  check(t, beta);
  if (v.size() != w.size()) throw InvalidArgument("prox_l1l2: length mismatch");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = l1l2(v[i], w[i], beta, t);
  return out;
}

}  // namespace sics::prox
