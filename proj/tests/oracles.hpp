#pragma once
// Reference solvers for the tests. None of these call the code they check: the Euler
// oracle is a KKT bisection, the MHD oracle scans beta on a grid, the limiter oracle is
// Dykstra's alternating projection.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mhdidp/euler_projection.hpp"
#include "mhdidp/slicing.hpp"

namespace oracle {

/// Real roots of m^3 + p m + q by sign changes on a fine scan plus bisection.
inline std::vector<double> cubic_roots_bisection(double p, double q) {
  auto g = [&](double m) { return (m * m + p) * m + q; };
  // Cauchy bound on |root|.
  const double R = 1.0 + std::max(std::abs(p), std::abs(q));
  const int n = 200000;
  std::vector<double> roots;
  double a = -R, ga = g(a);
  for (int k = 1; k <= n; ++k) {
    const double b = -R + 2.0 * R * k / n;
    const double gb = g(b);
    if (ga == 0.0) roots.push_back(a);
    else if ((ga < 0) != (gb < 0) && gb != 0.0) {
      double lo = a, hi = b;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        ((g(mid) < 0) == (g(lo) < 0) ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    ga = gb;
  }
  return roots;
}

/// Golden-section search on [a, b] (no parabolic steps).
inline double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Squared distance from (s, w) to {(m, E): E >= c + m^2/(2 rho)}, with s = |v| >= 0.
/// KKT: m = s/(1 + mu/rho), E = w + mu, and the constraint value is increasing in mu.
inline double parabola_dist2(double rho, double s, double w, double c, double* m_out = nullptr,
                             double* E_out = nullptr) {
  if (w - s * s / (2.0 * rho) >= c) {
    if (m_out) *m_out = s;
    if (E_out) *E_out = w;
    return 0.0;
  }
  auto g = [&](double mu) {
    const double m = s / (1.0 + mu / rho);
    return w + mu - m * m / (2.0 * rho) - c;
  };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < 0) hi *= 2.0;
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) < 0 ? lo : hi) = mid;
  }
  const double mu = hi;
  const double m = s / (1.0 + mu / rho);
  const double E = c + m * m / (2.0 * rho);
  if (m_out) *m_out = m;
  if (E_out) *E_out = E;
  return (m - s) * (m - s) + (E - w) * (E - w);
}

struct EulerOracle {
  double rho, s_m, E, dist2;
};

/// Projection onto F = {rho >= eps, E - |m|^2/(2 rho) >= eps + beta/2} by golden search over
/// rho of the (convex) partial minimum over (m, E).
inline EulerOracle euler_projection(double u, double s, double w, double eps, double beta) {
  const double c = eps + beta / 2.0;
  auto D = [&](double rho) { return (rho - u) * (rho - u) + parabola_dist2(rho, s, w, c); };
  const double r0 = std::max(u, eps);
  const double bound = std::sqrt(D(r0));
  const double hi = r0 + bound + 1e-300;
  double rho = golden_min(D, eps, hi, 1e-15 * std::max(1.0, hi));
  // Golden search leaves the endpoint eps open; check it explicitly.
  if (D(eps) <= D(rho)) rho = eps;
  EulerOracle o;
  o.rho = rho;
  o.dist2 = (rho - u) * (rho - u) + parabola_dist2(rho, s, w, c, &o.s_m, &o.E);
  return o;
}

/// Nested zoom grid for min over beta of d2 = f(beta) + (sqrt(beta) - |z|)^2, using the
/// slice projection only as a black-box evaluator of f.
struct GridResult {
  double beta = 0.0;
  double d2 = 0.0;
  double coarse_argmin = 0.0;
};

inline double d2_of(const mhdidp::MHDPoint<double>& pt, double eps, double beta) {
  const double f = mhdidp::project_slice(pt.fluid(), eps, beta).dist2;
  const double h = std::sqrt(beta) - pt.z.norm();
  return f + h * h;
}

inline GridResult beta_grid(const mhdidp::MHDPoint<double>& pt, double eps, int per_level,
                            int levels) {
  const double z2 = pt.z.squaredNorm();
  double lo = 0.0, hi = 2.0 * z2;
  GridResult g;
  g.d2 = std::numeric_limits<double>::infinity();
  for (int lev = 0; lev < levels; ++lev) {
    const double h = (hi - lo) / (per_level - 1);
    double best_b = lo, best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < per_level; ++k) {
      const double b = lo + h * k;
      const double v = d2_of(pt, eps, b);
      if (v < best) {
        best = v;
        best_b = b;
      }
    }
    if (lev == 0) g.coarse_argmin = best_b;
    if (best < g.d2) {
      g.d2 = best;
      g.beta = best_b;
    }
    lo = std::max(0.0, best_b - 2.0 * h);
    hi = best_b + 2.0 * h;
  }
  return g;
}

/// Row projection onto G^eps by beta grid + golden refinement (no Brent, no slicing driver).
inline Eigen::RowVectorXd project_row(const Eigen::RowVectorXd& x, double eps) {
  const int n = static_cast<int>(x.size() - 2) / 2;
  mhdidp::MHDPoint<double> pt;
  pt.u = x(0);
  pt.v = x.segment(1, n).transpose();
  pt.w = x(1 + n);
  pt.z = x.segment(2 + n, n).transpose();
  const double rho = pt.u;
  if (rho >= eps && rho > 0 &&
      pt.w - pt.v.squaredNorm() / (2 * rho) - pt.z.squaredNorm() / 2 >= eps)
    return x;
  const double zn = pt.z.norm();
  double beta = 0.0;
  if (zn > 0) {
    const GridResult g = beta_grid(pt, eps, 200, 1);
    const double h = 2.0 * zn * zn / 199;
    beta = golden_min([&](double b) { return d2_of(pt, eps, b); }, std::max(0.0, g.beta - h),
                      g.beta + h, 1e-15 * std::max(1.0, zn * zn));
  }
  const auto fp = mhdidp::project_slice(pt.fluid(), eps, beta);
  Eigen::RowVectorXd y(x.size());
  y(0) = fp.rho;
  y.segment(1, n) = fp.m.transpose();
  y(1 + n) = fp.E;
  y.segment(2 + n, n) = zn > 0 ? Eigen::RowVectorXd(std::sqrt(beta) * pt.z.transpose() / zn)
                               : Eigen::RowVectorXd::Zero(n);
  return y;
}

/// Dykstra's alternating projection of U onto {column sums = those of U} and {rows in G^eps}.
inline Eigen::MatrixXd dykstra_limit(const Eigen::MatrixXd& U, double eps, double tol,
                                     int max_iters, int* iters_out = nullptr) {
  const Eigen::RowVectorXd b = U.colwise().sum();
  const auto N = static_cast<double>(U.rows());
  Eigen::MatrixXd x = U, p = Eigen::MatrixXd::Zero(U.rows(), U.cols()),
                  q = Eigen::MatrixXd::Zero(U.rows(), U.cols());
  int k = 0;
  for (; k < max_iters; ++k) {
    Eigen::MatrixXd y = x + p;
    for (Eigen::Index i = 0; i < y.rows(); ++i) y.row(i) = project_row(y.row(i), eps);
    p = x + p - y;
    Eigen::MatrixXd xn = y + q;
    xn.rowwise() += (b - xn.colwise().sum()) / N;
    q = y + q - xn;
    const double change = (xn - x).norm();
    x = xn;
    if (change < tol * (1.0 + U.norm())) break;
  }
  if (iters_out) *iters_out = k;
  // Return the feasible side.
  Eigen::MatrixXd out = x;
  for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) = project_row(out.row(i), eps);
  return out;
}

/// KKT residual of min |p - x|^2/2 s.t. rho >= eps, E - |m|^2/(2 rho) - |B|^2/2 >= c at the
/// candidate p, with multipliers recovered from the E and rho rows. Scaled by 1 + |x|.
/// Pass empty B vectors for the fluid-only slice problem.
inline double kkt_residual(double xr, const Eigen::VectorXd& xm, double xE, const Eigen::VectorXd& xB,
                           double pr, const Eigen::VectorXd& pm, double pE, const Eigen::VectorXd& pB,
                           double eps, double c) {
  const double lam2 = pE - xE;
  const double lam1 = (pr - xr) - lam2 * pm.squaredNorm() / (2 * pr * pr);
  const double g1 = pr - eps;
  const double g2 = pE - pm.squaredNorm() / (2 * pr) - pB.squaredNorm() / 2 - c;
  double r = 0.0;
  r = std::max(r, ((pm - xm) + lam2 * pm / pr).cwiseAbs().maxCoeff());
  if (pB.size() > 0) r = std::max(r, ((pB - xB) + lam2 * pB).cwiseAbs().maxCoeff());
  r = std::max(r, std::max(0.0, -lam1));
  r = std::max(r, std::max(0.0, -lam2));
  r = std::max(r, std::abs(lam1 * g1) / (1 + std::abs(lam1)));
  r = std::max(r, std::abs(lam2 * g2) / (1 + std::abs(lam2)));
  r = std::max(r, std::max(0.0, -g1));
  r = std::max(r, std::max(0.0, -g2));
  const double scale = 1 + std::sqrt(xr * xr + xm.squaredNorm() + xE * xE + xB.squaredNorm());
  return r / scale;
}

}  // namespace oracle
