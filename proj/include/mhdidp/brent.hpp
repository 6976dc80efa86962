#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhdidp {

template <typename Scalar = double>
struct BrentConfig {
  Scalar abs_tol = Scalar(1e-14);
  Scalar rel_tol = Scalar(1e-12);
  int max_iters = 200;

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0) || max_iters < 1)
      throw std::invalid_argument("BrentConfig: tolerances must be positive and max_iters >= 1");
  }
};

template <typename Scalar = double>
struct BrentResult {
  Scalar x_min{};
  Scalar f_min{};
  int n_evals = 0;
  bool converged = false;
};

/// Derivative-free minimization of a continuous (convex) f on [a, b]: golden-section
/// search safeguarded with inverse parabolic interpolation.
///
/// Trial points are clamped to [a, b], so f is never evaluated outside the interval.
template <typename Scalar, typename F>
BrentResult<Scalar> brent_minimize(F&& f, Scalar a, Scalar b, const BrentConfig<Scalar>& cfg = {}) {
  using std::abs;
  using std::sqrt;
  cfg.validate();
  if (!(a < b)) throw std::invalid_argument("brent_minimize: requires a < b");

  const Scalar golden = (3 - sqrt(Scalar(5))) / 2;
  Scalar sa = a;
  Scalar sb = b;
  Scalar x = a + golden * (b - a);
  Scalar w = x;
  Scalar v = x;
  Scalar fx = f(x);
  Scalar fw = fx;
  Scalar fv = fx;
  Scalar d = 0;
  Scalar e = 0;
  BrentResult<Scalar> res;
  res.n_evals = 1;

  for (int iter = 0;; ++iter) {
    const Scalar m = (sa + sb) / 2;
    const Scalar tol = cfg.rel_tol * abs(x) + cfg.abs_tol;
    if (abs(x - m) < 2 * tol - (sb - sa) / 2) {
      res.converged = true;
      break;
    }
    if (iter >= cfg.max_iters) break;

    bool parabolic = false;
    if (abs(e) > tol) {
      Scalar r = (x - w) * (fx - fv);
      Scalar q = (x - v) * (fx - fw);
      Scalar p = (x - v) * q - (x - w) * r;
      q = 2 * (q - r);
      if (q > 0)
        p = -p;
      else
        q = -q;
      const Scalar r_e = e;
      e = d;
      if (abs(p) < abs(q * r_e) / 2 && q * (sa - x) < p && p < q * (sb - x)) {
        d = p / q;
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = x < m ? sb - x : sa - x;
      d = golden * e;
    }

    Scalar u = abs(d) >= tol ? x + d : x + (d > 0 ? tol : -tol);
    u = std::clamp(u, a, b);
    const Scalar fu = f(u);
    ++res.n_evals;

    if (fu <= fx) {
      if (u < x)
        sb = x;
      else
        sa = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x)
        sa = u;
      else
        sb = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }

  res.x_min = x;
  res.f_min = fx;
  return res;
}

}  // namespace mhdidp
