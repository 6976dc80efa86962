#include "mhdidp/dg/field.hpp"

#include <cmath>
#include <stdexcept>

namespace mhdidp::dg {

CellAverageMatrix<double> cell_averages(const DGField& f) {
  CellAverageMatrix<double> A(f.mesh.cells(), kVars);
  for (int c = 0; c < f.mesh.cells(); ++c)
    for (int v = 0; v < kVars; ++v) A(c, v) = f.coeffs(c, v * kModes);
  return A;
}

namespace {

State8 mirror(const State8& U, Edge side) {
  State8 g = U;
  const int normal = (side == kLeft || side == kRight) ? 0 : 1;
  g(1 + normal) = -g(1 + normal);
  g(5 + normal) = -g(5 + normal);
  return g;
}

}  // namespace

State8 ghost_state(const BoundarySpec& bc, Edge side, const State8& interior, double coord) {
  switch (bc.side[side]) {
    case BoundaryKind::outflow:
      return interior;
    case BoundaryKind::reflective:
      return mirror(interior, side);
    case BoundaryKind::jet_inflow: {
      if (!bc.nozzle) throw std::logic_error("jet_inflow boundary without nozzle data");
      const JetNozzle& nz = *bc.nozzle;
      if (std::abs(coord) <= nz.half_width) return nz.jet;
      // Outward normal component of u, decided pointwise.
      const int normal = (side == kLeft || side == kRight) ? 0 : 1;
      const double sign = (side == kLeft || side == kBottom) ? -1.0 : 1.0;
      const double un = sign * interior(1 + normal) / interior(0);
      return un <= 0.0 ? nz.ambient : interior;
    }
    case BoundaryKind::periodic:
      break;
  }
  throw std::logic_error("ghost_state called on a periodic side");
}

BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "periodic") return BoundaryKind::periodic;
  if (s == "outflow") return BoundaryKind::outflow;
  if (s == "reflective") return BoundaryKind::reflective;
  if (s == "jet-inflow" || s == "jet_inflow") return BoundaryKind::jet_inflow;
  throw std::invalid_argument("unknown boundary kind '" + s + "'");
}

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::outflow: return "outflow";
    case BoundaryKind::reflective: return "reflective";
    case BoundaryKind::jet_inflow: return "jet-inflow";
  }
  return "?";
}

}  // namespace mhdidp::dg
