#include "mhdidp/dg/physics.hpp"

#include <stdexcept>

namespace mhdidp::dg {

State8 to_state8(const ConservedState& s) {
  State8 U = State8::Zero();
  const int n = s.dim();
  U(0) = s.rho;
  U.segment(1, n) = s.m;
  U(4) = s.E;
  U.segment(5, n) = s.B;
  return U;
}

ConservedState from_state8(const State8& U, int dim) {
  return ConservedState(U(0), SmallVector<double>(U.segment(1, dim)), U(4),
                        SmallVector<double>(U.segment(5, dim)));
}

namespace {

Eigen::VectorXd compress(const State8& F, int n) {
  Eigen::VectorXd out(2 + 2 * n);
  out(0) = F(0);
  out.segment(1, n) = F.segment(1, n);
  out(1 + n) = F(4);
  out.segment(2 + n, n) = F.segment(5, n);
  return out;
}

std::pair<double, double> planar_normal(const SmallVector<double>& normal, int n) {
  if (normal.size() != n) throw std::invalid_argument("flux: normal dimension mismatch");
  const double nx = normal(0);
  const double ny = n > 1 ? normal(1) : 0.0;
  if (n > 2 && normal(2) != 0.0)
    throw std::invalid_argument("flux: only in-plane normals are supported");
  return {nx, ny};
}

}  // namespace

Eigen::VectorXd physical_flux(const ConservedState& U, const SmallVector<double>& normal,
                              const GasParams& p) {
  const auto [nx, ny] = planar_normal(normal, U.dim());
  State8 F;
  double speed = 0.0;
  if (!normal_flux(to_state8(U), nx, ny, p.gamma, F, speed))
    throw DomainError("physical_flux: state outside the admissible set");
  return compress(F, U.dim());
}

NumericalFlux llf_flux(const ConservedState& Uminus, const ConservedState& Uplus,
                       const SmallVector<double>& normal, const GasParams& p) {
  if (Uminus.dim() != Uplus.dim()) throw std::invalid_argument("llf_flux: dimension mismatch");
  const auto [nx, ny] = planar_normal(normal, Uminus.dim());
  State8 F;
  double alpha = 0.0;
  if (!llf_flux8(to_state8(Uminus), to_state8(Uplus), nx, ny, p.gamma, F, alpha))
    throw DomainError("llf_flux: inadmissible trace (missing pointwise limiting?)");
  return {compress(F, Uminus.dim()), alpha};
}

}  // namespace mhdidp::dg
