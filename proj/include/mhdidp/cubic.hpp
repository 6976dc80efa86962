#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace mhdidp {

/// Real roots of a depressed cubic, ascending.
template <typename Scalar>
struct CubicRoots {
  std::array<Scalar, 3> values{};
  int count = 0;

  const Scalar* begin() const { return values.data(); }
  const Scalar* end() const { return values.data() + count; }
  int size() const { return count; }
  Scalar operator[](int i) const { return values[i]; }
};

namespace detail {

template <typename Scalar>
Scalar polish_cubic_root(Scalar m, Scalar p, Scalar q) {
  using std::abs;
  Scalar res = (m * m + p) * m + q;
  for (int it = 0; it < 3 && res != 0; ++it) {
    const Scalar slope = 3 * m * m + p;
    if (slope == 0) break;
    const Scalar cand = m - res / slope;
    const Scalar cand_res = (cand * cand + p) * cand + q;
    if (!(abs(cand_res) < abs(res))) break;
    m = cand;
    res = cand_res;
  }
  return m;
}

}  // namespace detail

/// All real roots of m^3 + p m + q = 0 using real arithmetic only:
/// Cardano for a single real root, the trigonometric form for three.
template <typename Scalar>
CubicRoots<Scalar> cubic_real_roots(Scalar p, Scalar q) {
  using std::abs;
  using std::acos;
  using std::cbrt;
  using std::cos;
  using std::sqrt;
  CubicRoots<Scalar> out;

  if (p == 0) {
    out.values[0] = cbrt(-q);
    out.count = 1;
    return out;
  }

  const Scalar half_q = q / 2;
  const Scalar third_p = p / 3;
  const Scalar disc = half_q * half_q + third_p * third_p * third_p;

  if (disc > 0) {
    const Scalar sd = sqrt(disc);
    // Pick the sign that avoids cancellation, then recover the partner term from A*B = -p/3.
    const Scalar A = q > 0 ? -cbrt(half_q + sd) : cbrt(-half_q + sd);
    const Scalar B = A != 0 ? -third_p / A : Scalar(0);
    out.values[0] = detail::polish_cubic_root(A + B, p, q);
    out.count = 1;
    return out;
  }

  if (disc == 0) {
    // p < 0 here: simple root 3q/p and double root -3q/(2p).
    out.values[0] = 3 * q / p;
    out.values[1] = -3 * q / (2 * p);
    out.count = 2;
  } else {
    const Scalar r = 2 * sqrt(-third_p);
    Scalar arg = (3 * q / (2 * p)) * sqrt(-3 / p);
    arg = std::clamp(arg, Scalar(-1), Scalar(1));
    const Scalar phi = acos(arg) / 3;
    const Scalar two_pi_3 = 2 * std::numbers::pi_v<Scalar> / 3;
    for (int k = 0; k < 3; ++k) out.values[k] = r * cos(phi - two_pi_3 * k);
    out.count = 3;
  }
  for (int k = 0; k < out.count; ++k) out.values[k] = detail::polish_cubic_root(out.values[k], p, q);
  std::sort(out.values.begin(), out.values.begin() + out.count);
  return out;
}

}  // namespace mhdidp
