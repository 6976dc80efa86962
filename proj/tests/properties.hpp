#pragma once
// Randomized property checks shared by the unit tests and the acceptance runner.
// Each returns the number of violations and prints the first one to stderr.

#include <cmath>
#include <cstdio>
#include <random>

#include "mhdidp/dg/limiters.hpp"
#include "mhdidp/dg/solver.hpp"
#include "mhdidp/slicing.hpp"
#include "mhdidp/state.hpp"
#include "oracles.hpp"

namespace props {

using mhdidp::ConservedState;
using mhdidp::MHDPoint;
using Vec = mhdidp::SmallVector<double>;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  Vec vec(int n, double a, double b) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(a, b);
    return v;
  }
};

inline int report(int& failures, const char* what, double a, double b) {
  if (failures++ == 0) std::fprintf(stderr, "  property violated: %s (%.17g vs %.17g)\n", what, a, b);
  return failures;
}

/// Admissible state with internal energy eps + slack, slack drawn from [0, 10].
inline ConservedState random_admissible(Rng& r, double eps, int n = 3) {
  const double rho = r.uniform(eps, 10.0);
  const Vec m = r.vec(n, -10, 10), B = r.vec(n, -10, 10);
  const double E = eps + r.uniform(0.0, 10.0) + m.squaredNorm() / (2 * rho) + B.squaredNorm() / 2;
  return {rho, m, E, B};
}

/// Point with every component in [-10, 10] that lies outside G^eps.
inline MHDPoint<double> random_infeasible(Rng& r, double eps, int n = 3) {
  for (;;) {
    MHDPoint<double> p{r.uniform(-10, 10), r.vec(n, -10, 10), r.uniform(-10, 10), r.vec(n, -10, 10)};
    if (!mhdidp::is_admissible(p.as_state(), eps)) return p;
  }
}

inline double dist(const ConservedState& a, const ConservedState& b) {
  return std::sqrt((a.rho - b.rho) * (a.rho - b.rho) + (a.m - b.m).squaredNorm() +
                   (a.E - b.E) * (a.E - b.E) + (a.B - b.B).squaredNorm());
}

inline ConservedState lerp(const ConservedState& a, const ConservedState& b, double t) {
  return {(1 - t) * a.rho + t * b.rho, Vec((1 - t) * a.m + t * b.m), (1 - t) * a.E + t * b.E,
          Vec((1 - t) * a.B + t * b.B)};
}

// ---- state --------------------------------------------------------------------------

inline int state_suite(int samples = 10000, unsigned long long seed = 11) {
  Rng r(seed);
  int bad = 0;
  const double gamma = 5.0 / 3.0;
  for (int k = 0; k < samples; ++k) {
    const double eps = k % 2 ? 1e-6 : 1e-13;
    const mhdidp::GasParams p(gamma, eps);
    const auto a = random_admissible(r, eps), b = random_admissible(r, eps);
    const double lam = r.uniform(0, 1);
    const auto c = lerp(a, b, lam);
    if (!mhdidp::is_admissible(c, eps)) report(bad, "convex combination admissible", lam, 0);
    if (mhdidp::pressure_of(a, p) < (gamma - 1) * eps)
      report(bad, "pressure >= (gamma-1) eps", mhdidp::pressure_of(a, p), (gamma - 1) * eps);
    auto up = a;
    up.E += r.uniform(0, 100);
    if (!mhdidp::is_admissible(up, eps)) report(bad, "admissibility monotone in E", up.E, a.E);
    Vec nrm = r.vec(3, -1, 1);
    nrm.normalize();
    const double cf = mhdidp::fast_magnetosonic_speed(a, p, nrm);
    const double snd = std::sqrt(gamma * mhdidp::pressure_of(a, p) / a.rho);
    const double bn = std::abs(a.B.dot(nrm)) / std::sqrt(a.rho);
    if (cf < snd * (1 - 1e-14) || cf < bn * (1 - 1e-14))
      report(bad, "fast speed >= max(a, |b_n|)", cf, std::max(snd, bn));
  }
  return bad;
}

// ---- slicing ------------------------------------------------------------------------

inline int slicing_suite(int samples = 2000, unsigned long long seed = 23) {
  Rng r(seed);
  int bad = 0;
  for (int k = 0; k < samples; ++k) {
    const double eps = k % 2 ? 1e-6 : 1e-13;
    const auto x = random_infeasible(r, eps);
    const auto P = mhdidp::project_admissible(x, eps);
    if (!mhdidp::is_admissible(P.state, eps)) report(bad, "output admissible", P.state.E, 0);

    // Idempotence.
    const auto PP = mhdidp::project_admissible(mhdidp::to_point(P.state), eps);
    if (dist(PP.state, P.state) > 1e-14 * (1 + std::abs(P.state.E)))
      report(bad, "idempotence", dist(PP.state, P.state), 0);

    // Nonexpansiveness against random admissible y (P(y) = y).
    const auto y = random_admissible(r, eps);
    const double lhs = dist(P.state, y), rhs = dist(x.as_state(), y);
    if (lhs > rhs * (1 + 1e-12) + 1e-12) report(bad, "nonexpansive", lhs, rhs);

    // Interval contains the coarse-grid argmin; d2 convex on a grid of the interval.
    const double zn = x.z.norm();
    if (zn <= 0) continue;
    const auto g = oracle::beta_grid(x, eps, 400, 3);
    const double tol = 1e-9 * (1 + zn * zn);
    if (g.beta < P.beta_low - 2 * zn * zn / 399 - tol || g.beta > P.beta_high + tol)
      report(bad, "grid argmin inside [beta_low, beta_high]", g.beta, P.beta_low);
    if (k % 10 == 0) {
      const int G = 1000;
      double prev2 = 0, prev1 = 0;
      for (int i = 0; i < G; ++i) {
        const double b = P.beta_low + (P.beta_high - P.beta_low) * i / (G - 1);
        const double v = mhdidp::eval_d2(x, eps, b);
        if (i >= 2 && prev1 > 0.5 * (prev2 + v) + 1e-10 * (1 + std::abs(v)))
          report(bad, "d2 midpoint convexity", prev1, 0.5 * (prev2 + v));
        prev2 = prev1;
        prev1 = v;
      }
    }
  }
  return bad;
}

/// Monotonicity and the 1/2-Lipschitz bound of sqrt f(beta).
inline int slice_f_suite(int samples = 2000, unsigned long long seed = 37) {
  Rng r(seed);
  int bad = 0;
  for (int k = 0; k < samples; ++k) {
    const double eps = k % 2 ? 1e-6 : 1e-13;
    const mhdidp::FluidPoint<double> fp{r.uniform(-10, 10), r.vec(3, -10, 10), r.uniform(-10, 10)};
    double prev = -1;
    for (int i = 0; i <= 50; ++i) {
      const double beta = 10.0 * i / 50;
      const double f = mhdidp::project_slice(fp, eps, beta).dist2;
      if (f < prev * (1 - 1e-12) - 1e-14) report(bad, "f nondecreasing in beta", f, prev);
      prev = f;
    }
    const double b1 = r.uniform(0, 10), b2 = r.uniform(0, 10);
    const double s1 = std::sqrt(mhdidp::project_slice(fp, eps, b1).dist2);
    const double s2 = std::sqrt(mhdidp::project_slice(fp, eps, b2).dist2);
    if (std::abs(s1 - s2) > 0.5 * std::abs(b1 - b2) + 1e-12 * (1 + s1))
      report(bad, "sqrt f half-Lipschitz", std::abs(s1 - s2), 0.5 * std::abs(b1 - b2));
  }
  return bad;
}

// ---- DG free stream -----------------------------------------------------------------

/// Periodic constant state over 100 steps; returns the max coefficient drift.
inline double free_stream_drift(int steps = 100) {
  using namespace mhdidp::dg;
  RunConfig cfg = default_config(CaseId::alfven);
  cfg.nx = cfg.ny = 8;
  cfg.x0 = cfg.y0 = 0;
  cfg.x1 = cfg.y1 = 1;
  cfg.fixed_dt.reset();
  cfg.cfl = 0.2;
  cfg.t_final = 1e9;
  DGField f(cfg.mesh());
  const double gamma = cfg.gamma;
  const auto s = mhdidp::state_from_primitive(1.3, Vec(Eigen::Vector3d(0.3, -0.2, 0.1)), 0.9,
                                              Vec(Eigen::Vector3d(0.5, 0.7, 0.2)), gamma);
  const State8 U = to_state8(s);
  for (int c = 0; c < f.mesh.cells(); ++c) f.cell(c).col(0) = U;
  const DGField init = f;
  Solver solver(cfg, f);
  for (int n = 0; n < steps; ++n) solver.step();
  return (solver.field().coeffs - init.coeffs).cwiseAbs().maxCoeff();
}

}  // namespace props
