#pragma once

#include <array>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "mhdidp/dg/basis.hpp"
#include "mhdidp/dg/physics.hpp"
#include "mhdidp/dy_limiter.hpp"

namespace mhdidp::dg {

/// Uniform mesh of square cells; cell (i, j) has index j*nx + i.
struct Mesh {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 0.0;

  int cells() const { return nx * ny; }
  int index(int i, int j) const { return j * nx + i; }
  double xc(int i) const { return x0 + (i + 0.5) * dx; }
  double yc(int j) const { return y0 + (j + 0.5) * dx; }
  double x1() const { return x0 + nx * dx; }
  double y1() const { return y0 + ny * dx; }
};

/// Per-cell modal coefficients, 8 variables x 6 modes stored variable-major in one row.
using CoeffMatrix = Eigen::Matrix<double, Eigen::Dynamic, kVars * kModes, Eigen::RowMajor>;
using CellCoeffs = Eigen::Matrix<double, kVars, kModes, Eigen::RowMajor>;

struct DGField {
  Mesh mesh;
  CoeffMatrix coeffs;

  DGField() = default;
  explicit DGField(const Mesh& m) : mesh(m), coeffs(CoeffMatrix::Zero(m.cells(), kVars * kModes)) {}

  Eigen::Map<CellCoeffs> cell(int c) { return Eigen::Map<CellCoeffs>(coeffs.row(c).data()); }
  Eigen::Map<const CellCoeffs> cell(int c) const {
    return Eigen::Map<const CellCoeffs>(coeffs.row(c).data());
  }
  State8 average(int c) const { return cell(c).col(0); }
  /// Value at reference coordinates (xi, eta) of cell c.
  State8 value(int c, double xi, double eta) const {
    return cell(c) * basis_row(xi, eta).transpose();
  }
};

/// N x 8 matrix of cell averages in the limiter layout.
CellAverageMatrix<double> cell_averages(const DGField& f);

enum class BoundaryKind { periodic, outflow, reflective, jet_inflow };

/// Left boundary of the jet case: inflow inside |y| <= half_width, otherwise ambient state
/// for incoming flow and outflow for outgoing flow.
struct JetNozzle {
  double half_width = 0.05;
  State8 jet = State8::Zero();
  State8 ambient = State8::Zero();
};

struct BoundarySpec {
  // Indexed by Edge: left, right, bottom, top.
  std::array<BoundaryKind, 4> side{BoundaryKind::periodic, BoundaryKind::periodic,
                                   BoundaryKind::periodic, BoundaryKind::periodic};
  std::optional<JetNozzle> nozzle;

  bool periodic_x() const { return side[kLeft] == BoundaryKind::periodic; }
  bool periodic_y() const { return side[kBottom] == BoundaryKind::periodic; }
};

/// Exterior state across a non-periodic boundary side, given the interior trace and the
/// tangential coordinate of the point (y for left/right, x for bottom/top).
State8 ghost_state(const BoundarySpec& bc, Edge side, const State8& interior, double coord);

BoundaryKind parse_boundary_kind(const std::string& s);
std::string to_string(BoundaryKind k);

}  // namespace mhdidp::dg
