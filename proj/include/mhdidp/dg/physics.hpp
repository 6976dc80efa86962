#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "mhdidp/dg/basis.hpp"
#include "mhdidp/state.hpp"

namespace mhdidp::dg {

/// Conserved variables at one point, ordered (rho, m, E, B) with 3-vectors.
using State8 = Eigen::Matrix<double, kVars, 1>;

inline double internal_energy8(const State8& U) {
  const double kinetic = (U(1) * U(1) + U(2) * U(2) + U(3) * U(3)) / (2.0 * U(0));
  const double magnetic = (U(5) * U(5) + U(6) * U(6) + U(7) * U(7)) / 2.0;
  return U(4) - kinetic - magnetic;
}

inline bool admissible8(const State8& U, double eps) {
  return U(0) >= eps && U(0) > 0.0 && internal_energy8(U) >= eps;
}

/// Physical flux F(U).n for n = (nx, ny, 0), plus |u.n| + c_f for the same normal.
/// Returns false when U is outside G (rho <= 0 or p <= 0).
inline bool normal_flux(const State8& U, double nx, double ny, double gamma, State8& F,
                        double& speed) {
  const double rho = U(0);
  if (!(rho > 0.0)) return false;
  const double inv_rho = 1.0 / rho;
  const double ux = U(1) * inv_rho, uy = U(2) * inv_rho, uz = U(3) * inv_rho;
  const double Bx = U(5), By = U(6), Bz = U(7);
  const double B2 = Bx * Bx + By * By + Bz * Bz;
  const double p = (gamma - 1.0) * (U(4) - 0.5 * rho * (ux * ux + uy * uy + uz * uz) - 0.5 * B2);
  if (!(p > 0.0)) return false;
  const double pt = p + 0.5 * B2;
  const double un = ux * nx + uy * ny;
  const double Bn = Bx * nx + By * ny;
  const double uB = ux * Bx + uy * By + uz * Bz;

  F(0) = rho * un;
  F(1) = U(1) * un - Bx * Bn + pt * nx;
  F(2) = U(2) * un - By * Bn + pt * ny;
  F(3) = U(3) * un - Bz * Bn;
  F(4) = (U(4) + pt) * un - uB * Bn;
  F(5) = un * Bx - Bn * ux;
  F(6) = un * By - Bn * uy;
  F(7) = un * Bz - Bn * uz;

  const double a2 = gamma * p * inv_rho;
  const double b2 = B2 * inv_rho;
  const double bn2 = Bn * Bn * inv_rho;
  const double sum = a2 + b2;
  const double disc = std::max(0.0, sum * sum - 4.0 * a2 * bn2);
  speed = std::abs(un) + std::sqrt(0.5 * (sum + std::sqrt(disc)));
  return true;
}

/// x- and y-fluxes at a volume point. Only needs rho != 0; volume points may sit outside G.
inline void cartesian_fluxes(const State8& U, double gamma, State8& Fx, State8& Fy) {
  const double rho = U(0);
  const double inv_rho = 1.0 / rho;
  const double ux = U(1) * inv_rho, uy = U(2) * inv_rho, uz = U(3) * inv_rho;
  const double Bx = U(5), By = U(6), Bz = U(7);
  const double B2 = Bx * Bx + By * By + Bz * Bz;
  const double p = (gamma - 1.0) * (U(4) - 0.5 * rho * (ux * ux + uy * uy + uz * uz) - 0.5 * B2);
  const double pt = p + 0.5 * B2;
  const double uB = ux * Bx + uy * By + uz * Bz;

  Fx(0) = U(1);
  Fx(1) = U(1) * ux - Bx * Bx + pt;
  Fx(2) = U(2) * ux - By * Bx;
  Fx(3) = U(3) * ux - Bz * Bx;
  Fx(4) = (U(4) + pt) * ux - uB * Bx;
  Fx(5) = 0.0;
  Fx(6) = ux * By - Bx * uy;
  Fx(7) = ux * Bz - Bx * uz;

  Fy(0) = U(2);
  Fy(1) = U(1) * uy - Bx * By;
  Fy(2) = U(2) * uy - By * By + pt;
  Fy(3) = U(3) * uy - Bz * By;
  Fy(4) = (U(4) + pt) * uy - uB * By;
  Fy(5) = uy * Bx - By * ux;
  Fy(6) = 0.0;
  Fy(7) = uy * Bz - By * uz;
}

/// Local Lax-Friedrichs flux from minus to plus side along (nx, ny):
///   (F(U-) + F(U+)).n / 2 - alpha/2 (U+ - U-),  alpha = max(|u.n| + c_f).
/// Returns false when either trace is outside G.
inline bool llf_flux8(const State8& Um, const State8& Up, double nx, double ny, double gamma,
                      State8& F, double& alpha) {
  State8 Fm, Fp;
  double sm = 0.0, sp = 0.0;
  if (!normal_flux(Um, nx, ny, gamma, Fm, sm)) return false;
  if (!normal_flux(Up, nx, ny, gamma, Fp, sp)) return false;
  alpha = std::max(sm, sp);
  F = 0.5 * (Fm + Fp) - 0.5 * alpha * (Up - Um);
  return true;
}

/// Pads a state of dimension n <= 3 into the 2.5D layout.
State8 to_state8(const ConservedState& s);
ConservedState from_state8(const State8& U, int dim = 3);

/// Physical flux F(U).n of a general state; n is a unit vector of the state's dimension
/// (its third component, when present, must be zero: the DG harness is planar).
Eigen::VectorXd physical_flux(const ConservedState& U, const SmallVector<double>& normal,
                              const GasParams& p);

struct NumericalFlux {
  Eigen::VectorXd flux;  // 2+2n entries, conserved-variable order
  double alpha = 0.0;
};

/// LLF flux between two admissible traces; throws DomainError for a trace outside G.
NumericalFlux llf_flux(const ConservedState& Uminus, const ConservedState& Uplus,
                       const SmallVector<double>& normal, const GasParams& p);

}  // namespace mhdidp::dg
