#pragma once

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "mhdidp/cubic.hpp"
#include "mhdidp/state.hpp"

namespace mhdidp {

/// Fluid part (u, v, w) of a point to be projected: density, momentum, energy coordinates.
template <typename Scalar>
struct FluidPoint {
  Scalar u{};
  SmallVector<Scalar> v;
  Scalar w{};
};

/// Closest point (rho, m, E) of the slice set F^eps_beta and its squared distance to the input.
template <typename Scalar>
struct FluidProjection {
  Scalar rho{};
  SmallVector<Scalar> m;
  Scalar E{};
  Scalar dist2{};
};

namespace detail {

/// Candidate on the reduced problem, momentum expressed as a signed length along v.
template <typename Scalar>
struct ReducedCandidate {
  Scalar rho = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar m{};
  Scalar E{};
  Scalar dist2 = std::numeric_limits<Scalar>::infinity();

  void offer(Scalar r, Scalar mm, Scalar e, Scalar u, Scalar s, Scalar w) {
    const Scalar d = (r - u) * (r - u) + (mm - s) * (mm - s) + (e - w) * (e - w);
    if (d < dist2) {
      rho = r;
      m = mm;
      E = e;
      dist2 = d;
    }
  }
};

}  // namespace detail

/// Euclidean projection of (u, v, w) onto
///   F^eps_beta = {rho >= eps, E - |m|^2/(2 rho) >= eps + beta/2}.
///
/// The optimal momentum is parallel to v, so the problem is solved for the scalar
/// s = |v| and the result rotated back onto v/|v|. Candidates are the KKT points of
/// each active-set pattern; the closest feasible one is returned.
template <typename Scalar>
FluidProjection<Scalar> project_slice(const FluidPoint<Scalar>& pt, Scalar eps, Scalar beta) {
  using std::sqrt;
  const Scalar u = pt.u;
  const Scalar w = pt.w;
  const Scalar c = eps + beta / 2;
  const Scalar s2 = pt.v.squaredNorm();
  const Scalar s = sqrt(s2);

  if (u >= eps && w - s2 / (2 * u) >= c) return {u, pt.v, w, Scalar(0)};

  detail::ReducedCandidate<Scalar> best;
  // Boundary points whose multiplier-sign test failed. Still feasible, so they only matter
  // when rounding rejects every candidate (inputs within an ulp of the constraint).
  detail::ReducedCandidate<Scalar> fallback;

  // rho = eps with the energy constraint inactive.
  if (u < eps && w - s2 / (2 * eps) >= c) best.offer(eps, s, w, u, s, w);

  if (s == 0) {
    if (w < c) best.offer(u < eps ? eps : u, Scalar(0), c, u, s, w);
  } else {
    // Both constraints active: rho = eps, E = m^2/(2 eps) + c.
    const auto roots = cubic_real_roots<Scalar>(4 * eps * eps + eps * beta - 2 * eps * w,
                                                -2 * eps * eps * s);
    for (Scalar mr : roots) {
      if (mr == 0) continue;
      if (s / mr > 1 && 2 * eps * u + mr * (s - mr) < 2 * eps * eps)
        best.offer(eps, mr, mr * mr / (2 * eps) + c, u, s, w);
      else
        fallback.offer(eps, mr, mr * mr / (2 * eps) + c, u, s, w);
    }

    // Energy constraint active, density constraint inactive: the two closed-form
    // density roots, each with both momentum branches.
    const Scalar K = c + u - w;
    const Scalar D = 2 * s2 + K * K;
    const Scalar num = u * u * D - 2 * u * s2 * (w - c) + s2 * s2;
    if (D > 0 && num >= 0) {
      const Scalar half_root = sqrt(num) / (2 * sqrt(D));
      for (Scalar r : {u / 2 + half_root, u / 2 - half_root}) {
        if (!(r >= eps)) continue;
        const Scalar disc = -8 * r * r + 8 * u * r + s2;
        if (disc < 0) continue;
        const Scalar sq = sqrt(disc) / 2;
        for (Scalar mm : {s / 2 - sq, s / 2 + sq}) {
          const Scalar e = c + mm * mm / (2 * r);
          (e > w ? best : fallback).offer(r, mm, e, u, s, w);
        }
      }
    }

    // Same active set through the velocity t = m/rho, which solves
    // (s/2) t^2 + K t - s = 0 without the cancellation of the density formulas.
    {
      const Scalar root = sqrt(K * K + 2 * s2);
      const Scalar t = K >= 0 ? 2 * s / (K + root) : (root - K) / s;
      const Scalar r = (s / t - c + w) / (1 + t * t / 2);
      if (t > 0 && r >= eps) {
        const Scalar mm = r * t;
        const Scalar e = c + mm * mm / (2 * r);
        (e > w ? best : fallback).offer(r, mm, e, u, s, w);
      }
    }
  }

  if (!(best.dist2 < std::numeric_limits<Scalar>::infinity())) best = fallback;
  if (!(best.dist2 < std::numeric_limits<Scalar>::infinity())) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "project_slice: no feasible KKT candidate for u=" << u
        << " |v|=" << s << " w=" << w << " eps=" << eps << " beta=" << beta;
    throw InternalError(msg.str());
  }

  FluidProjection<Scalar> out;
  out.rho = best.rho;
  out.m = s > 0 ? SmallVector<Scalar>(pt.v * (best.m / s)) : SmallVector<Scalar>(SmallVector<Scalar>::Zero(pt.v.size()));
  out.E = best.E;
  // Candidates sit on the constraint boundary; absorb rounding so the result is feasible in
  // floating point and a second projection is the identity.
  for (int it = 0; it < 8; ++it) {
    const Scalar deficit = c - (out.E - out.m.squaredNorm() / (2 * out.rho));
    if (!(deficit > 0)) break;
    out.E = std::nextafter(out.E + deficit, std::numeric_limits<Scalar>::infinity());
  }
  out.dist2 = (out.rho - u) * (out.rho - u) + (out.m - pt.v).squaredNorm() + (out.E - w) * (out.E - w);
  return out;
}

}  // namespace mhdidp
