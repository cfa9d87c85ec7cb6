#include "sics/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "sics/error.hpp"
#include "sics/prox.hpp"

namespace sics {

Objective::Objective(ObjectiveKind kind, double beta, std::optional<Vector> w)
    : kind_(kind), beta_(beta), w_(std::move(w)) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw InvalidArgument("beta must be positive and finite");
}

Objective Objective::l1() { return Objective(ObjectiveKind::L1, 1.0, std::nullopt); }

Objective Objective::l1l1(Vector w, double beta) {
  return Objective(ObjectiveKind::L1L1, beta, std::move(w));
}

Objective Objective::l1l2(Vector w, double beta) {
  return Objective(ObjectiveKind::L1L2, beta, std::move(w));
}

Objective Objective::for_scheme(Scheme scheme, const SideInformation& side_info, double beta) {
  switch (scheme) {
    case Scheme::CS: return l1();
    case Scheme::L1L1: return l1l1(side_info.values(), beta);
    case Scheme::L1L2: return l1l2(side_info.values(), beta);
  }
  throw InvalidArgument("unknown scheme");
}

Scheme Objective::scheme() const noexcept {
  switch (kind_) {
    case ObjectiveKind::L1: return Scheme::CS;
    case ObjectiveKind::L1L1: return Scheme::L1L1;
    case ObjectiveKind::L1L2: return Scheme::L1L2;
  }
  return Scheme::CS;
}

double Objective::value(const Vector& x) const {
  const double base = x.lpNorm<1>();
  switch (kind_) {
    case ObjectiveKind::L1: return base;
    case ObjectiveKind::L1L1: return base + beta_ * (x - *w_).lpNorm<1>();
    case ObjectiveKind::L1L2: return base + 0.5 * beta_ * (x - *w_).squaredNorm();
  }
  return base;
}

void Objective::prox_into(const Vector& v, double t, Vector& out) const {
  const Index n = v.size();
  out.resize(n);
  switch (kind_) {
    case ObjectiveKind::L1:
      for (Index i = 0; i < n; ++i) out[i] = prox::l1(v[i], t);
      return;
    case ObjectiveKind::L1L1: {
      const Vector& w = *w_;
      for (Index i = 0; i < n; ++i) out[i] = prox::l1l1(v[i], w[i], beta_, t);
      return;
    }
    case ObjectiveKind::L1L2: {
      const Vector& w = *w_;
      for (Index i = 0; i < n; ++i) out[i] = prox::l1l2(v[i], w[i], beta_, t);
      return;
    }
  }
}

Vector Objective::prox(const Vector& v, double t) const {
  if (!(t > 0.0)) throw InvalidArgument("prox step t must be positive");
  if (w_ && w_->size() != v.size()) throw InvalidArgument("objective side information length mismatch");
  Vector out;
  prox_into(v, t, out);
  return out;
}

AffineProjector::AffineProjector(Matrix A, Vector y) : a_(std::move(A)), y_(std::move(y)) {
  if (a_.rows() < 1 || a_.rows() != y_.size()) {
    throw InvalidArgument("projection needs a nonempty A with as many rows as y has entries");
  }
  if (a_.rows() > a_.cols()) throw SingularEnsemble("A has more rows than columns: A A^T is singular");
  Matrix gram = Matrix::Zero(a_.rows(), a_.rows());
  gram.selfadjointView<Eigen::Lower>().rankUpdate(a_);
  gram_.compute(gram);
  if (gram_.info() != Eigen::Success) throw SingularEnsemble("Cholesky factorization of A A^T failed");
  const auto diag = gram_.matrixLLT().diagonal();
  const double lo = diag.minCoeff();
  const double hi = diag.maxCoeff();
  if (!(lo > 0.0) || (lo * lo) < 1e-14 * (hi * hi)) {
    throw SingularEnsemble("A A^T is numerically rank deficient");
  }
}

void AffineProjector::project_into(const Vector& x, Vector& out, Vector& work) const {
  work.noalias() = a_ * x;
  work -= y_;
  gram_.solveInPlace(work);
  out = x;
  out.noalias() -= a_.transpose() * work;
}

Vector AffineProjector::project(const Vector& x) const {
  if (x.size() != a_.cols()) throw InvalidArgument("projection: vector length differs from column count");
  Vector out;
  Vector work;
  project_into(x, out, work);
  return out;
}

Vector AffineProjector::project_refined(const Vector& x, int max_passes) const {
  Vector z = project(x);
  double res = (a_ * z - y_).norm();
  Vector next;
  Vector work;
  for (int pass = 0; pass < max_passes && res > 0.0; ++pass) {
    project_into(z, next, work);
    const double next_res = (a_ * next - y_).norm();
    if (!(next_res < res)) break;
    z.swap(next);
    res = next_res;
  }
  return z;
}

Vector affine_projection(const Vector& x, const AffineProjector& cache) { return cache.project(x); }

RecoveryResult solve(const AffineProjector& projector, const Objective& objective,
                     const SolverConfig& config, const Vector* reference) {
  if (!(config.rho > 0.0) || config.max_iter < 1 || !(config.eps_abs > 0.0) ||
      !(config.eps_rel > 0.0)) {
    throw InvalidArgument("solver config: rho, max_iter, eps_abs and eps_rel must be positive");
  }
  const Index n = projector.cols();
  if (objective.w() && objective.w()->size() != n) {
    throw InvalidArgument("objective side information length differs from problem dimension");
  }
  if (reference && reference->size() != n) throw InvalidArgument("reference length mismatch");

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  double rho = config.rho;

  Vector x = Vector::Zero(n);
  Vector z = projector.project(x);
  Vector z_prev(n);
  Vector u = Vector::Zero(n);
  Vector work_n(n);
  Vector work_m(projector.rows());

  RecoveryResult result;
  int iter = 0;
  for (iter = 1; iter <= config.max_iter; ++iter) {
    work_n = z - u;
    objective.prox_into(work_n, 1.0 / rho, x);

    z_prev.swap(z);
    work_n = x + u;
    projector.project_into(work_n, z, work_m);

    u += x - z;

    const double r_norm = (x - z).norm();
    const double s_norm = rho * (z - z_prev).norm();
    const double eps_pri = sqrt_n * config.eps_abs + config.eps_rel * std::max(x.norm(), z.norm());
    const double eps_dual = sqrt_n * config.eps_abs + config.eps_rel * rho * u.norm();
    result.primal_residual = r_norm;
    result.dual_residual = s_norm;
    if (r_norm <= eps_pri && s_norm <= eps_dual) {
      result.converged = true;
      break;
    }
    if (!std::isfinite(r_norm) || !std::isfinite(s_norm)) break;

    if (config.adaptive_rho) {
      if (r_norm > 10.0 * s_norm) {
        rho *= 2.0;
        u *= 0.5;
      } else if (s_norm > 10.0 * r_norm) {
        rho *= 0.5;
        u *= 2.0;
      }
    }
  }
  result.iterations = std::min(iter, config.max_iter);

  result.x_hat = projector.project_refined(z);
  result.objective_value = objective.value(result.x_hat);
  const Vector& y = projector.rhs();
  result.feasibility_residual =
      (projector.matrix() * result.x_hat - y).norm() / std::max(1.0, y.norm());
  result.subgradient = -rho * u;
  if (reference) {
    const double ref_norm = reference->norm();
    const double err = (result.x_hat - *reference).norm();
    result.relative_error = ref_norm > 0.0 ? err / ref_norm : err;
  } else {
    result.relative_error = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

RecoveryResult solve(const ProblemInstance& instance, const Objective& objective,
                     const SolverConfig& config) {
  const AffineProjector projector(instance.matrix(), instance.measurements());
  return solve(projector, objective, config, &instance.signal().values());
}

}  // namespace sics
