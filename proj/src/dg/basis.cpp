#include "mhdidp/dg/basis.hpp"

#include <cmath>

namespace mhdidp::dg {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5 = std::sqrt(5.0);

Tables build_tables() {
  Tables t;

  int q = 0;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i, ++q) {
      const double xi = kGaussNodes[i];
      const double eta = kGaussNodes[j];
      t.vol_points.row(q) << xi, eta;
      t.vol_weights(q) = kGaussWeights[i] * kGaussWeights[j];
      t.vol_phi.row(q) = basis_row(xi, eta);
      for (int k = 0; k < kModes; ++k) {
        const Eigen::Vector2d g = basis_gradient(k, xi, eta);
        t.vol_wdxi(q, k) = t.vol_weights(q) * g(0);
        t.vol_wdeta(q, k) = t.vol_weights(q) * g(1);
      }
    }
  }
  t.vol_project = 0.25 * t.vol_phi.transpose() * t.vol_weights.asDiagonal();

  for (int e = 0; e < 4; ++e) {
    for (int k = 0; k < kEdgePoints; ++k) {
      const double g = kGaussNodes[k];
      double xi = 0.0;
      double eta = 0.0;
      switch (e) {
        case kLeft: xi = -1.0; eta = g; break;
        case kRight: xi = 1.0; eta = g; break;
        case kBottom: xi = g; eta = -1.0; break;
        default: xi = g; eta = 1.0; break;
      }
      const int col = e * kEdgePoints + k;
      t.trace_points.row(col) << xi, eta;
      t.trace_phi.row(col) = basis_row(xi, eta);
      t.edge_lift[e].row(k) = kGaussWeights[k] * t.trace_phi.row(col);
    }
  }

  int p = 0;
  for (double a : kLobattoNodes)
    for (double b : kGaussNodes) {
      t.limiter_points.row(p) << a, b;
      t.limiter_phi.row(p++) = basis_row(a, b);
    }
  for (double a : kGaussNodes)
    for (double b : kLobattoNodes) {
      t.limiter_points.row(p) << a, b;
      t.limiter_phi.row(p++) = basis_row(a, b);
    }
  for (double a : kGaussNodes)
    for (double b : kGaussNodes) {
      t.limiter_points.row(p) << a, b;
      t.limiter_phi.row(p++) = basis_row(a, b);
    }

  t.midpoint_phi[kLeft] = basis_row(-1.0, 0.0);
  t.midpoint_phi[kRight] = basis_row(1.0, 0.0);
  t.midpoint_phi[kBottom] = basis_row(0.0, -1.0);
  t.midpoint_phi[kTop] = basis_row(0.0, 1.0);

  // Divergence of (sum b1_k phi_k, sum b2_k phi_k) is linear; C maps the 12 coefficients to
  // its coordinates in {phi_0, phi_1, phi_2}. Square cells make the 2/dx factor common.
  Eigen::Matrix<double, 3, 2 * kModes> C = Eigen::Matrix<double, 3, 2 * kModes>::Zero();
  for (int qq = 0; qq < kVolumePoints; ++qq) {
    const double w = 0.25 * t.vol_weights(qq);
    for (int j = 0; j < 3; ++j) {
      const double phij = t.vol_phi(qq, j);
      for (int k = 0; k < kModes; ++k) {
        const Eigen::Vector2d g = basis_gradient(k, t.vol_points(qq, 0), t.vol_points(qq, 1));
        C(j, k) += w * g(0) * phij;
        C(j, kModes + k) += w * g(1) * phij;
      }
    }
  }
  const Eigen::Matrix3d CCt = C * C.transpose();
  t.divfree = Eigen::Matrix<double, 2 * kModes, 2 * kModes>::Identity() -
              C.transpose() * CCt.ldlt().solve(C);
  return t;
}

}  // namespace

const std::array<double, 3> kGaussNodes = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
const std::array<double, 3> kGaussWeights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
const std::array<double, 4> kLobattoNodes = {-1.0, -1.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0), 1.0};

double basis_value(int k, double xi, double eta) {
  switch (k) {
    case 0: return 1.0;
    case 1: return kSqrt3 * xi;
    case 2: return kSqrt3 * eta;
    case 3: return kSqrt5 * (3.0 * xi * xi - 1.0) / 2.0;
    case 4: return 3.0 * xi * eta;
    case 5: return kSqrt5 * (3.0 * eta * eta - 1.0) / 2.0;
    default: return 0.0;
  }
}

Eigen::Vector2d basis_gradient(int k, double xi, double eta) {
  switch (k) {
    case 1: return {kSqrt3, 0.0};
    case 2: return {0.0, kSqrt3};
    case 3: return {3.0 * kSqrt5 * xi, 0.0};
    case 4: return {3.0 * eta, 3.0 * xi};
    case 5: return {0.0, 3.0 * kSqrt5 * eta};
    default: return {0.0, 0.0};
  }
}

Eigen::Matrix<double, 1, kModes> basis_row(double xi, double eta) {
  Eigen::Matrix<double, 1, kModes> r;
  for (int k = 0; k < kModes; ++k) r(k) = basis_value(k, xi, eta);
  return r;
}

const Tables& tables() {
  static const Tables t = build_tables();
  return t;
}

}  // namespace mhdidp::dg
