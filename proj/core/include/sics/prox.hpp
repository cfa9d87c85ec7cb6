#pragma once

#include <Eigen/Core>

namespace sics::prox {

// Scalar proximal maps. Each returns argmin_u phi(u) + (u - v)^2 / (2 t).

// phi(u) = |u|
double l1(double v, double t) noexcept;
// phi(u) = |u| + beta |u - w|
double l1l1(double v, double w, double beta, double t) noexcept;
// phi(u) = |u| + beta/2 (u - w)^2
double l1l2(double v, double w, double beta, double t) noexcept;

// Vector forms, applied per coordinate. Throw InvalidArgument on a length
// mismatch or a nonpositive t / beta.
Eigen::VectorXd l1(const Eigen::VectorXd& v, double t);
Eigen::VectorXd l1l1(const Eigen::VectorXd& v, const Eigen::VectorXd& w, double beta, double t);
Eigen::VectorXd l1l2(const Eigen::VectorXd& v, const Eigen::VectorXd& w, double beta, double t);

}  // namespace sics::prox
