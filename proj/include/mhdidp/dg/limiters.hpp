#pragma once

#include <stdexcept>
#include <string>

#include "mhdidp/dg/field.hpp"

namespace mhdidp::dg {

/// A limiter was handed data violating its precondition (e.g. an inadmissible average).
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Per cell, L2-project (B_x, B_y) onto the P2 fields with zero divergence on the cell.
void divfree_project(DGField& f);

/// Largest t in [0, 1] with avg + t (val - avg) in G^eps; avg must be admissible.
double zhang_shu_point_theta(const State8& avg, const State8& val, double eps);

struct ZhangShuStats {
  int limited_cells = 0;
  double min_theta = 1.0;
  // Minima over all limiter points after limiting.
  double min_rho = 0.0;
  double min_internal_energy = 0.0;
};

/// Scales each cell's deviation from its average so that every limiter point is in G^eps.
/// Throws ContractViolation if a cell average is itself inadmissible.
ZhangShuStats zhang_shu_limit(DGField& f, double eps);

/// Component-wise TVB limiter (modified minmod with threshold M dx^2). Cells flagged in
/// either direction fall back to a limited linear polynomial. Returns the flagged count.
int tvb_limit(DGField& f, double M, const BoundarySpec& bc);

/// Shifts every variable's polynomial so the new cell averages are the rows of X.
void apply_limited_averages(DGField& f, const CellAverageMatrix<double>& X);

}  // namespace mhdidp::dg
