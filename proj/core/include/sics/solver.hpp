#pragma once

#include <optional>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "sics/bounds.hpp"
#include "sics/model.hpp"

namespace sics {

enum class ObjectiveKind { L1, L1L1, L1L2 };

// ||x||_1, ||x||_1 + beta ||x - w||_1, or ||x||_1 + beta/2 ||x - w||_2^2.
class Objective {
 public:
  static Objective l1();
  static Objective l1l1(Vector w, double beta = 1.0);
  static Objective l1l2(Vector w, double beta = 1.0);
  // Objective for a bound scheme; CS maps to plain l1 and ignores w.
  static Objective for_scheme(Scheme scheme, const SideInformation& side_info, double beta = 1.0);

  ObjectiveKind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }
  const std::optional<Vector>& w() const noexcept { return w_; }
  Scheme scheme() const noexcept;

  double value(const Vector& x) const;
  // argmin_u f(u) + ||u - v||^2 / (2 t)
  Vector prox(const Vector& v, double t) const;
  void prox_into(const Vector& v, double t, Vector& out) const;

 private:
  Objective(ObjectiveKind kind, double beta, std::optional<Vector> w);

  ObjectiveKind kind_;
  double beta_;
  std::optional<Vector> w_;
};

struct SolverConfig {
  double rho = 1.0;
  int max_iter = 20000;
  double eps_abs = 1e-8;
  double eps_rel = 1e-7;
  // Residual balancing (rho doubled / halved when residuals are 10x apart).
  bool adaptive_rho = false;
};

// Euclidean projection onto {x : A x = y} using a Cholesky factorization of
// A A^T computed once.
class AffineProjector {
 public:
  // Throws SingularEnsemble when A A^T is not numerically positive definite.
  AffineProjector(Matrix A, Vector y);

  Index rows() const noexcept { return a_.rows(); }
  Index cols() const noexcept { return a_.cols(); }
  const Matrix& matrix() const noexcept { return a_; }
  const Vector& rhs() const noexcept { return y_; }

  // x - A^T (A A^T)^{-1} (A x - y)
  Vector project(const Vector& x) const;
  // Repeats the correction on the residual until ||A z - y|| stalls.
  Vector project_refined(const Vector& x, int max_passes = 3) const;
  // Allocation-free form for inner loops. `out` may not alias `x`.
  void project_into(const Vector& x, Vector& out, Vector& work) const;

 private:
  Matrix a_;
  Vector y_;
  Eigen::LLT<Matrix> gram_;
};

Vector affine_projection(const Vector& x, const AffineProjector& cache);

struct RecoveryResult {
  Vector x_hat;
  double objective_value = 0.0;
  // ||A x_hat - y||_2 / max(1, ||y||_2)
  double feasibility_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  // ||x_hat - x*||_2 / ||x*||_2 (absolute error when x* = 0); NaN if x* unknown.
  double relative_error = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  // Approximate element of the subdifferential of f at x_hat that lies in
  // the row space of A (the stationarity multiplier).
  Vector subgradient;
};

// Operator splitting: x <- prox_{f/rho}(z - u), z <- projection of x + u,
// u <- u + x - z. x_hat is the final z refined onto the constraint set.
RecoveryResult solve(const AffineProjector& projector, const Objective& objective,
                     const SolverConfig& config = {}, const Vector* reference = nullptr);
RecoveryResult solve(const ProblemInstance& instance, const Objective& objective,
                     const SolverConfig& config = {});

}  // namespace sics
