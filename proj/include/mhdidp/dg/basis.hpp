#pragma once

#include <array>

#include <Eigen/Dense>

namespace mhdidp::dg {

/// Modes of the total-degree-2 basis on the reference square [-1,1]^2.
inline constexpr int kModes = 6;
/// Conserved variables (rho, m_x, m_y, m_z, E, B_x, B_y, B_z); 2.5D, so n = 3.
inline constexpr int kVars = 8;
inline constexpr int kVolumePoints = 9;
inline constexpr int kEdgePoints = 3;
inline constexpr int kTracePoints = 4 * kEdgePoints;
/// (Gauss-Lobatto x Gauss) U (Gauss x Gauss-Lobatto) U (Gauss x Gauss).
inline constexpr int kLimiterPoints = 33;

/// Edge order used throughout: left (xi=-1), right (xi=+1), bottom (eta=-1), top (eta=+1).
enum Edge : int { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

/// Legendre basis orthonormal for the cell-average inner product:
///   1, sqrt3 xi, sqrt3 eta, sqrt5 (3xi^2-1)/2, 3 xi eta, sqrt5 (3eta^2-1)/2.
/// Mode 0 is the constant 1, so its coefficient is the cell average.
double basis_value(int k, double xi, double eta);
Eigen::Vector2d basis_gradient(int k, double xi, double eta);
Eigen::Matrix<double, 1, kModes> basis_row(double xi, double eta);

/// 1D rules on [-1,1]; weights sum to 2.
extern const std::array<double, 3> kGaussNodes;
extern const std::array<double, 3> kGaussWeights;
extern const std::array<double, 4> kLobattoNodes;

using PointBasis = Eigen::Matrix<double, Eigen::Dynamic, kModes>;

/// Precomputed basis evaluations for all quadrature and limiter point sets.
struct Tables {
  Eigen::Matrix<double, kVolumePoints, 2> vol_points;
  Eigen::Matrix<double, kVolumePoints, 1> vol_weights;  // sum 4
  Eigen::Matrix<double, kVolumePoints, kModes> vol_phi;
  // diag(w) * d(phi)/d(xi), diag(w) * d(phi)/d(eta)
  Eigen::Matrix<double, kVolumePoints, kModes> vol_wdxi;
  Eigen::Matrix<double, kVolumePoints, kModes> vol_wdeta;
  // Coefficients from point values: (1/4) phi^T diag(w).
  Eigen::Matrix<double, kModes, kVolumePoints> vol_project;

  // Trace points, edge-major: column e*3+k is point k of edge e.
  Eigen::Matrix<double, kTracePoints, kModes> trace_phi;
  Eigen::Matrix<double, kTracePoints, 2> trace_points;
  // diag(w_e) * phi on each edge.
  std::array<Eigen::Matrix<double, kEdgePoints, kModes>, 4> edge_lift;

  Eigen::Matrix<double, kLimiterPoints, kModes> limiter_phi;
  Eigen::Matrix<double, kLimiterPoints, 2> limiter_points;

  // Basis at the edge midpoints (xi, eta) = (+-1, 0), (0, +-1), for TVB.
  std::array<Eigen::Matrix<double, 1, kModes>, 4> midpoint_phi;

  // L2 projection of (B_x, B_y) coefficients onto the locally divergence-free subspace.
  Eigen::Matrix<double, 2 * kModes, 2 * kModes> divfree;
};

const Tables& tables();

}  // namespace mhdidp::dg
