#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mhdidp {

/// Vector of runtime length n in {1, 2, 3}; stored inline, never allocates.
template <typename Scalar>
using SmallVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

/// Raised when a state cannot be evaluated (non-positive density, inadmissible trace).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an algorithm reaches a branch that its own invariants exclude.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One MHD state (rho, m, E, B) with vector dimension n = m.size() = B.size().
template <typename Scalar>
struct BasicConservedState {
  Scalar rho{};
  SmallVector<Scalar> m;
  Scalar E{};
  SmallVector<Scalar> B;

  BasicConservedState() = default;

  BasicConservedState(Scalar rho_, SmallVector<Scalar> m_, Scalar E_, SmallVector<Scalar> B_)
      : rho(rho_), m(std::move(m_)), E(E_), B(std::move(B_)) {
    if (m.size() != B.size() || m.size() < 1 || m.size() > 3)
      throw std::invalid_argument("ConservedState: m and B must share a dimension in {1,2,3}");
    if (!std::isfinite(rho) || !std::isfinite(E) || !m.allFinite() || !B.allFinite())
      throw std::invalid_argument("ConservedState: non-finite component");
  }

  int dim() const { return static_cast<int>(m.size()); }
};

using ConservedState = BasicConservedState<double>;

template <typename Scalar>
struct BasicGasParams {
  Scalar gamma;
  Scalar eps;

  BasicGasParams(Scalar gamma_, Scalar eps_) : gamma(gamma_), eps(eps_) {
    if (!(gamma > 1)) throw std::invalid_argument("GasParams: gamma must exceed 1");
    if (!(eps > 0)) throw std::invalid_argument("GasParams: eps must be positive");
  }
};

using GasParams = BasicGasParams<double>;

/// rho*e = E - |m|^2/(2 rho) - |B|^2/2.
template <typename Scalar>
Scalar internal_energy_density(const BasicConservedState<Scalar>& s) {
  if (!(s.rho > 0)) throw DomainError("internal_energy_density: density must be positive");
  return s.E - s.m.squaredNorm() / (2 * s.rho) - s.B.squaredNorm() / 2;
}

/// Membership in G^eps = {rho >= eps, rho*e >= eps}; boundary inclusive.
template <typename Scalar>
bool is_admissible(const BasicConservedState<Scalar>& s, Scalar eps) {
  if (!(s.rho >= eps) || !(s.rho > 0)) return false;
  return internal_energy_density(s) >= eps;
}

template <typename Scalar>
bool is_admissible(const BasicConservedState<Scalar>& s, const BasicGasParams<Scalar>& p) {
  return is_admissible(s, p.eps);
}

template <typename Scalar>
Scalar pressure_of(const BasicConservedState<Scalar>& s, const BasicGasParams<Scalar>& p) {
  return (p.gamma - 1) * internal_energy_density(s);
}

template <typename Scalar>
BasicConservedState<Scalar> state_from_primitive(Scalar rho, const SmallVector<Scalar>& u,
                                                 Scalar pressure,
                                                 const SmallVector<Scalar>& B, Scalar gamma) {
  const Scalar E = pressure / (gamma - 1) + rho * u.squaredNorm() / 2 + B.squaredNorm() / 2;
  return BasicConservedState<Scalar>(rho, SmallVector<Scalar>(rho * u), E, B);
}

/// Fast magnetosonic speed c_f along a unit normal:
/// c_f^2 = (a^2 + b^2 + sqrt((a^2 + b^2)^2 - 4 a^2 b_n^2)) / 2.
template <typename Scalar>
Scalar fast_magnetosonic_speed(const BasicConservedState<Scalar>& s,
                               const BasicGasParams<Scalar>& p,
                               const SmallVector<Scalar>& normal) {
  if (!is_admissible(s, p))
    throw DomainError("fast_magnetosonic_speed: inadmissible state");
  if (normal.size() != s.dim())
    throw std::invalid_argument("fast_magnetosonic_speed: normal dimension mismatch");
  using std::sqrt;
  const Scalar a2 = p.gamma * pressure_of(s, p) / s.rho;
  const Scalar b2 = s.B.squaredNorm() / s.rho;
  const Scalar Bn = s.B.dot(normal);
  const Scalar bn2 = Bn * Bn / s.rho;
  const Scalar sum = a2 + b2;
  const Scalar disc = std::max(Scalar(0), sum * sum - 4 * a2 * bn2);
  return sqrt((sum + sqrt(disc)) / 2);
}

}  // namespace mhdidp
