#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "mhdidp/brent.hpp"
#include "mhdidp/euler_projection.hpp"
#include "mhdidp/state.hpp"

namespace mhdidp {

/// Point (u, v, w, z) in conserved coordinates; z plays the role of B.
template <typename Scalar>
struct MHDPoint {
  Scalar u{};
  SmallVector<Scalar> v;
  Scalar w{};
  SmallVector<Scalar> z;

  FluidPoint<Scalar> fluid() const { return {u, v, w}; }
  BasicConservedState<Scalar> as_state() const { return {u, v, w, z}; }
};

template <typename Scalar>
MHDPoint<Scalar> to_point(const BasicConservedState<Scalar>& s) {
  return {s.rho, s.m, s.E, s.B};
}

template <typename Scalar>
struct SlicingResult {
  BasicConservedState<Scalar> state;
  Scalar beta_star{};
  Scalar beta_low{};
  Scalar beta_high{};
  int n_slice_calls = 0;
  Scalar dist2{};
  bool converged = true;
};

/// Norms at or below this are treated as z = 0.
template <typename Scalar>
inline constexpr Scalar kZeroFieldThreshold = Scalar(1e-300);

/// Search interval [beta_low, beta_high] for the magnetic energy of the projection,
/// given f(0) = squared distance of the fluid part to F^eps_0.
template <typename Scalar>
std::pair<Scalar, Scalar> search_interval(Scalar z_norm, Scalar f0) {
  using std::sqrt;
  const Scalar high = z_norm * z_norm;
  const Scalar ratio = z_norm / (1 + sqrt(f0) + high / 2);
  Scalar low = ratio * ratio;
  low = std::clamp(low, Scalar(0), high);
  return {low, high};
}

/// d^2(beta) = f(beta) + (sqrt(beta) - |z|)^2, f the squared distance of the fluid part to
/// the slice F^eps_beta.
template <typename Scalar>
Scalar eval_d2(const MHDPoint<Scalar>& pt, Scalar eps, Scalar beta) {
  using std::sqrt;
  const Scalar f = project_slice(pt.fluid(), eps, beta).dist2;
  const Scalar h = sqrt(beta) - pt.z.norm();
  return f + h * h;
}

/// Projection onto the MHD numerical admissible set G^eps by slicing on beta = |B|^2.
template <typename Scalar>
SlicingResult<Scalar> project_admissible(const MHDPoint<Scalar>& pt, Scalar eps,
                                         const BrentConfig<Scalar>& cfg = {}) {
  using std::abs;
  using std::sqrt;
  SlicingResult<Scalar> out;
  const auto input = pt.as_state();
  if (is_admissible(input, eps)) {
    out.state = input;
    out.beta_star = pt.z.squaredNorm();
    out.beta_low = out.beta_high = out.beta_star;
    return out;
  }

  const Scalar z_norm = pt.z.norm();
  const FluidPoint<Scalar> fluid = pt.fluid();
  const auto at_zero = project_slice(fluid, eps, Scalar(0));
  out.n_slice_calls = 1;

  FluidProjection<Scalar> slice = at_zero;
  SmallVector<Scalar> B = SmallVector<Scalar>::Zero(pt.z.size());

  if (z_norm <= kZeroFieldThreshold<Scalar>) {
    out.beta_star = 0;
  } else {
    const auto [low, high] = search_interval(z_norm, at_zero.dist2);
    out.beta_low = low;
    out.beta_high = high;

    Scalar best_d2 = std::numeric_limits<Scalar>::infinity();
    auto d2 = [&](Scalar beta) {
      auto proj = project_slice(fluid, eps, beta);
      ++out.n_slice_calls;
      const Scalar h = sqrt(beta) - z_norm;
      const Scalar value = proj.dist2 + h * h;
      // Brent keeps the last point with f <= f_x, so track ties the same way.
      if (value <= best_d2) {
        best_d2 = value;
        slice = std::move(proj);
      }
      return value;
    };

    if (high > low) {
      const auto res = brent_minimize<Scalar>(d2, low, high, cfg);
      out.beta_star = res.x_min;
      out.converged = res.converged;
      if (!(res.f_min == best_d2)) slice = project_slice(fluid, eps, res.x_min);

      // d2 is flat at its minimum, so Brent pins beta* only to ~sqrt(machine eps). One
      // secant step on d2'(beta) = (E - w) + 1 - |z|/sqrt(beta), which is increasing,
      // restores full precision; kept only if it shrinks |d2'|.
      auto slope = [&](Scalar beta, const FluidProjection<Scalar>& s) {
        return (s.E - pt.w) + 1 - z_norm / sqrt(beta);
      };
      const Scalar b0 = out.beta_star;
      if (b0 > 0) {
        const Scalar g0 = slope(b0, slice);
        const Scalar step = Scalar(1e-7) * b0;
        const Scalar b1 = std::clamp(g0 > 0 ? b0 - step : b0 + step, low, high);
        if (g0 != 0 && b1 != b0) {
          const auto s1 = project_slice(fluid, eps, b1);
          ++out.n_slice_calls;
          const Scalar g1 = slope(b1, s1);
          if (g1 != g0) {
            const Scalar b2 = std::clamp(b0 - g0 * (b1 - b0) / (g1 - g0), low, high);
            if (b2 != b0) {
              auto s2 = project_slice(fluid, eps, b2);
              ++out.n_slice_calls;
              if (abs(slope(b2, s2)) < abs(g0)) {
                out.beta_star = b2;
                slice = std::move(s2);
              }
            }
          }
        }
      }
    } else {
      out.beta_star = high;
      d2(high);
    }
    B = pt.z * (sqrt(out.beta_star) / z_norm);
  }

  BasicConservedState<Scalar> st;
  st.rho = slice.rho;
  st.m = slice.m;
  st.E = slice.E;
  st.B = B;

  const Scalar violation = eps - internal_energy_density(st);
  if (violation > Scalar(1e-10) * (1 + std::abs(st.E)) || !(st.rho >= eps))
    throw InternalError("project_admissible: assembled state violates G^eps by " +
                        std::to_string(static_cast<double>(violation)));
  for (int it = 0; it < 8 && !is_admissible(st, eps); ++it) {
    const Scalar deficit = eps - internal_energy_density(st);
    st.E = std::nextafter(st.E + deficit, std::numeric_limits<Scalar>::infinity());
  }

  out.state = st;
  out.dist2 = (st.rho - pt.u) * (st.rho - pt.u) + (st.m - pt.v).squaredNorm() +
              (st.E - pt.w) * (st.E - pt.w) + (st.B - pt.z).squaredNorm();
  return out;
}

}  // namespace mhdidp
