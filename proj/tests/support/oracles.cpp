#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace sics::oracle {

double grid_prox(const std::function<double(double)>& phi, double v, double t, double lo, double hi,
                 double coarse, double fine) {
  const auto F = [&](double u) { return phi(u) + (u - v) * (u - v) / (2.0 * t); };
  const long steps = static_cast<long>(std::ceil((hi - lo) / coarse));
  double best_u = lo;
  double best_f = F(lo);
  for (long k = 1; k <= steps; ++k) {
    const double u = std::min(hi, lo + static_cast<double>(k) * coarse);
    const double f = F(u);
    if (f < best_f) {
      best_f = f;
      best_u = u;
    }
  }
  // The objective is convex, so the minimizer lies within one coarse step.
  const double a = std::max(lo, best_u - coarse);
  const double b = std::min(hi, best_u + coarse);
  const long fine_steps = static_cast<long>(std::ceil((b - a) / fine));
  for (long k = 0; k <= fine_steps; ++k) {
    const double u = std::min(b, a + static_cast<double>(k) * fine);
    const double f = F(u);
    if (f < best_f) {
      best_f = f;
      best_u = u;
    }
  }
  return best_u;
}

QpResult solve_qp(const Mat& Q, const Vec& c, const Mat& E, const Vec& d, double tol, int max_iter) {
  const Eigen::Index N = c.size();
  const Eigen::Index p = d.size();
  Vec z = Vec::Ones(N);
  Vec s = Vec::Ones(N);
  Vec lam = Vec::Zero(p);
  QpResult out;

  const double scale = 1.0 + std::max(c.lpNorm<Eigen::Infinity>(), d.lpNorm<Eigen::Infinity>());
  Mat K(2 * N + p, 2 * N + p);
  for (int it = 0; it < max_iter; ++it) {
    const Vec rd = Q * z + c - E.transpose() * lam - s;
    const Vec rp = E * z - d;
    const double mu = z.dot(s) / static_cast<double>(N);
    out.iterations = it;
    if (rd.lpNorm<Eigen::Infinity>() <= tol * scale && rp.lpNorm<Eigen::Infinity>() <= tol * scale &&
        z.dot(s) <= tol * scale) {
      out.converged = true;
      break;
    }

    // Rows: dual residual, primal residual, complementarity.
    K.setZero();
    K.block(0, 0, N, N) = Q;
    K.block(0, N, N, p) = -E.transpose();
    K.block(0, N + p, N, N) = -Mat::Identity(N, N);
    K.block(N, 0, p, N) = E;
    K.block(N + p, 0, N, N) = s.asDiagonal();
    K.block(N + p, N + p, N, N) = z.asDiagonal();
    const Eigen::PartialPivLU<Mat> lu(K);

    const auto solve_dir = [&](const Vec& rc) {
      Vec rhs(2 * N + p);
      rhs << -rd, -rp, -rc;
      return Vec(lu.solve(rhs));
    };
    const auto step_to_boundary = [](const Vec& x, const Vec& dx) {
      double a = 1.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (dx[i] < 0.0) a = std::min(a, -x[i] / dx[i]);
      }
      return a;
    };

    // Predictor.
    const Vec aff = solve_dir(z.cwiseProduct(s));
    const Vec dz_a = aff.head(N);
    const Vec ds_a = aff.tail(N);
    const double ap = step_to_boundary(z, dz_a);
    const double ad = step_to_boundary(s, ds_a);
    const double mu_aff = (z + ap * dz_a).dot(s + ad * ds_a) / static_cast<double>(N);
    const double sigma = std::pow(mu_aff / mu, 3.0);

    // Corrector.
    const Vec rc = z.cwiseProduct(s) + dz_a.cwiseProduct(ds_a) - Vec::Constant(N, sigma * mu);
    const Vec dir = solve_dir(rc);
    const Vec dz = dir.head(N);
    const Vec dl = dir.segment(N, p);
    const Vec ds = dir.tail(N);
    const double a = std::min(1.0, 0.995 * std::min(step_to_boundary(z, dz), step_to_boundary(s, ds)));
    z += a * dz;
    lam += a * dl;
    s += a * ds;
  }
  out.z = z;
  out.objective = 0.5 * z.dot(Q * z) + c.dot(z);
  return out;
}

ProgramResult basis_pursuit_lp(const Mat& A, const Vec& y) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  Mat E(m, 2 * n);
  E << A, -A;
  const QpResult r = solve_qp(Mat::Zero(2 * n, 2 * n), Vec::Ones(2 * n), E, y);
  ProgramResult out;
  out.x = r.z.head(n) - r.z.tail(n);
  out.objective = r.objective;
  out.converged = r.converged;
  return out;
}

ProgramResult l1l1_lp(const Mat& A, const Vec& y, const Vec& w, double beta) {
  // x = p - q, x - w = a - b, all four nonnegative.
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  const Mat I = Mat::Identity(n, n);
  Mat E = Mat::Zero(m + n, 4 * n);
  E.block(0, 0, m, n) = A;
  E.block(0, n, m, n) = -A;
  E.block(m, 0, n, n) = I;
  E.block(m, n, n, n) = -I;
  E.block(m, 2 * n, n, n) = -I;
  E.block(m, 3 * n, n, n) = I;
  Vec d(m + n);
  d << y, w;
  Vec c(4 * n);
  c << Vec::Ones(2 * n), Vec::Constant(2 * n, beta);
  const QpResult r = solve_qp(Mat::Zero(4 * n, 4 * n), c, E, d);
  ProgramResult out;
  out.x = r.z.head(n) - r.z.segment(n, n);
  out.objective = r.objective;
  out.converged = r.converged;
  return out;
}

ProgramResult l1l2_qp(const Mat& A, const Vec& y, const Vec& w, double beta) {
  // beta/2 ||p - q - w||^2 = beta/2 (p-q)'(p-q) - beta w'(p-q) + beta/2 ||w||^2
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  const Mat I = Mat::Identity(n, n);
  Mat Q(2 * n, 2 * n);
  Q << beta * I, -beta * I, -beta * I, beta * I;
  Vec c(2 * n);
  c << Vec::Ones(n) - beta * w, Vec::Ones(n) + beta * w;
  Mat E(m, 2 * n);
  E << A, -A;
  const QpResult r = solve_qp(Q, c, E, y);
  ProgramResult out;
  out.x = r.z.head(n) - r.z.tail(n);
  out.objective = r.objective + 0.5 * beta * w.squaredNorm();
  out.converged = r.converged;
  return out;
}

ProgramResult basis_pursuit_vertices(const Mat& A, const Vec& y) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + m, true);
  ProgramResult best;
  best.objective = std::numeric_limits<double>::infinity();
  do {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (pick[static_cast<std::size_t>(j)]) cols.push_back(j);
    }
    Mat B(m, m);
    for (Eigen::Index k = 0; k < m; ++k) B.col(k) = A.col(cols[static_cast<std::size_t>(k)]);
    const Eigen::FullPivLU<Mat> lu(B);
    if (lu.rank() < m) continue;
    const Vec xb = lu.solve(y);
    const double val = xb.lpNorm<1>();
    if (val < best.objective) {
      best.objective = val;
      best.x = Vec::Zero(n);
      for (Eigen::Index k = 0; k < m; ++k) best.x[cols[static_cast<std::size_t>(k)]] = xb[k];
      best.converged = true;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

Vec min_norm_projection(const Mat& A, const Vec& y, const Vec& x) {
  const Vec residual = y - A * x;
  const Vec correction = A.completeOrthogonalDecomposition().solve(residual);
  return x + correction;
}

Recount recount(const Vec& x, const Vec& w) {
  Recount r;
  r.w_bar = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double wi = w[i];
    const bool in_I = xi != 0.0;
    const bool in_J = xi != wi;
    if (in_I) ++r.s;
    if (in_I || in_J) ++r.q;
    if (xi > 0.0 && xi < wi) ++r.good;
    if (xi < 0.0 && xi > wi) ++r.good;
    if (xi > 0.0 && xi > wi) ++r.bad;
    if (xi < 0.0 && xi < wi) ++r.bad;
    if (in_I && !in_J) ++r.equal_nonzero;
    if (!in_I && in_J) ++r.overestimate;
    if (!in_I && !in_J) ++r.zero_both;
    if (!in_I && in_J) ++r.ic_and_j;
    if (!in_I && !in_J) ++r.ic_and_jc;
    if (!in_I && in_J && std::abs(wi) >= 1.0) ++r.K;
    if (!in_I) r.w_bar = std::max(r.w_bar, std::abs(wi));
    if (xi > 0.0) r.v += (1.0 + xi - wi) * (1.0 + xi - wi);
    if (xi < 0.0) r.v += (1.0 + wi - xi) * (1.0 + wi - xi);
    if (in_I && !in_J) r.v += (std::abs(wi) - 1.0) * (std::abs(wi) - 1.0);
  }
  r.xi = r.overestimate - r.equal_nonzero;
  return r;
}

double naive_box_distance(const Vec& g, const Vec& lo, const Vec& hi, double t) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double a = t * lo[i];
    const double b = t * hi[i];
    const double nearest = std::clamp(g[i], a, b);
    total += (g[i] - nearest) * (g[i] - nearest);
  }
  return total;
}

}  // namespace sics::oracle
