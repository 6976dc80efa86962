#include "mhdidp/dg/limiters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mhdidp::dg {

void divfree_project(DGField& f) {
  const auto& P = tables().divfree;
  Eigen::Matrix<double, 2 * kModes, 1> b;
#pragma omp parallel for private(b)
  for (int c = 0; c < f.mesh.cells(); ++c) {
    auto C = f.cell(c);
    b << C.row(5).transpose(), C.row(6).transpose();
    b = P * b;
    C.row(5) = b.head<kModes>().transpose();
    C.row(6) = b.tail<kModes>().transpose();
  }
}

double zhang_shu_point_theta(const State8& avg, const State8& val, double eps) {
  if (admissible8(val, eps)) return 1.0;
  // Density is linear along the segment.
  double hi = 1.0;
  if (val(0) < eps) hi = (avg(0) - eps) / (avg(0) - val(0));
  hi = std::clamp(hi, 0.0, 1.0);
  const State8 dev = val - avg;
  auto ok = [&](double t) {
    const State8 s = avg + t * dev;
    return s(0) > 0.0 && internal_energy8(s) >= eps;
  };
  if (ok(hi)) return hi;
  // rho e is concave along the segment, so the admissible part of [0, hi] is an interval [0, t*].
  double lo = 0.0;
  for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

ZhangShuStats zhang_shu_limit(DGField& f, double eps) {
  const auto& phi = tables().limiter_phi;
  const int N = f.mesh.cells();
  ZhangShuStats stats;
  double min_rho = std::numeric_limits<double>::infinity();
  double min_ie = std::numeric_limits<double>::infinity();
  int limited = 0;
  double min_theta = 1.0;
  int bad_cell = -1;

#pragma omp parallel for reduction(min : min_rho, min_ie, min_theta) reduction(+ : limited)
  for (int c = 0; c < N; ++c) {
    auto C = f.cell(c);
    const State8 avg = C.col(0);
    if (!admissible8(avg, eps)) {
#pragma omp critical
      if (bad_cell < 0) bad_cell = c;
      continue;
    }
    Eigen::Matrix<double, kLimiterPoints, kVars> V = phi * C.transpose();
    double theta = 1.0;
    for (int q = 0; q < kLimiterPoints; ++q)
      theta = std::min(theta, zhang_shu_point_theta(avg, V.row(q).transpose(), eps));
    if (theta < 1.0) {
      // Check the rescaled polynomial itself: at large E the roundoff of re-evaluation
      // alone can leave a point a hair outside. Shrink until every point passes; theta = 0
      // reproduces the (admissible) average exactly.
      const Eigen::Matrix<double, kVars, kModes - 1> dev = C.rightCols<kModes - 1>();
      for (int attempt = 0;; ++attempt) {
        C.rightCols<kModes - 1>() = theta * dev;
        V = phi * C.transpose();
        bool all_ok = true;
        for (int q = 0; q < kLimiterPoints && all_ok; ++q) all_ok = admissible8(V.row(q).transpose(), eps);
        if (all_ok || theta == 0.0) break;
        theta = attempt < 10 ? theta * (1.0 - 1e-13 * std::pow(10.0, attempt)) : 0.0;
      }
      ++limited;
    }
    min_theta = std::min(min_theta, theta);
    for (int q = 0; q < kLimiterPoints; ++q) {
      min_rho = std::min(min_rho, V(q, 0));
      min_ie = std::min(min_ie, internal_energy8(V.row(q).transpose()));
    }
  }
  if (bad_cell >= 0) {
    std::ostringstream msg;
    msg << "zhang_shu_limit: cell " << bad_cell << " has an inadmissible average";
    throw ContractViolation(msg.str());
  }
  stats.limited_cells = limited;
  stats.min_theta = min_theta;
  stats.min_rho = min_rho;
  stats.min_internal_energy = min_ie;
  return stats;
}

namespace {

double minmod(double a, double b, double c) {
  if (a > 0 && b > 0 && c > 0) return std::min({a, b, c});
  if (a < 0 && b < 0 && c < 0) return std::max({a, b, c});
  return 0.0;
}

double tvb_minmod(double a, double b, double c, double threshold) {
  return std::abs(a) <= threshold ? a : minmod(a, b, c);
}

}  // namespace

int tvb_limit(DGField& f, double M, const BoundarySpec& bc) {
  const Mesh& mesh = f.mesh;
  const auto& mid = tables().midpoint_phi;
  const double threshold = M * mesh.dx * mesh.dx;
  const double s3 = std::sqrt(3.0);
  const CellAverageMatrix<double> avg = cell_averages(f);

  auto neighbor = [&](int i, int j, Edge side) -> State8 {
    int ii = i, jj = j;
    switch (side) {
      case kLeft: --ii; break;
      case kRight: ++ii; break;
      case kBottom: --jj; break;
      case kTop: ++jj; break;
    }
    const bool outside = ii < 0 || ii >= mesh.nx || jj < 0 || jj >= mesh.ny;
    if (!outside) return avg.row(mesh.index(ii, jj)).transpose();
    if (bc.side[side] == BoundaryKind::periodic) {
      ii = (ii + mesh.nx) % mesh.nx;
      jj = (jj + mesh.ny) % mesh.ny;
      return avg.row(mesh.index(ii, jj)).transpose();
    }
    const double coord = (side == kLeft || side == kRight) ? mesh.yc(j) : mesh.xc(i);
    return ghost_state(bc, side, avg.row(mesh.index(i, j)).transpose(), coord);
  };

  int flagged = 0;
#pragma omp parallel for reduction(+ : flagged)
  for (int c = 0; c < mesh.cells(); ++c) {
    const int i = c % mesh.nx;
    const int j = c / mesh.nx;
    auto C = f.cell(c);
    const State8 u = C.col(0);
    const State8 dxp = neighbor(i, j, kRight) - u;
    const State8 dxm = u - neighbor(i, j, kLeft);
    const State8 dyp = neighbor(i, j, kTop) - u;
    const State8 dym = u - neighbor(i, j, kBottom);
    const State8 uR = C * mid[kRight].transpose() - u;
    const State8 uL = u - C * mid[kLeft].transpose();
    const State8 uT = C * mid[kTop].transpose() - u;
    const State8 uB = u - C * mid[kBottom].transpose();

    bool cell_flagged = false;
    for (int v = 0; v < kVars; ++v) {
      const bool changed = tvb_minmod(uR(v), dxp(v), dxm(v), threshold) != uR(v) ||
                           tvb_minmod(uL(v), dxp(v), dxm(v), threshold) != uL(v) ||
                           tvb_minmod(uT(v), dyp(v), dym(v), threshold) != uT(v) ||
                           tvb_minmod(uB(v), dyp(v), dym(v), threshold) != uB(v);
      if (!changed) continue;
      cell_flagged = true;
      // Linear modes: sqrt3 * c is the edge deviation of a P1 polynomial.
      C(v, 1) = tvb_minmod(s3 * C(v, 1), dxp(v), dxm(v), threshold) / s3;
      C(v, 2) = tvb_minmod(s3 * C(v, 2), dyp(v), dym(v), threshold) / s3;
      C(v, 3) = C(v, 4) = C(v, 5) = 0.0;
    }
    if (cell_flagged) ++flagged;
  }
  return flagged;
}

void apply_limited_averages(DGField& f, const CellAverageMatrix<double>& X) {
  if (X.rows() != f.mesh.cells() || X.cols() != kVars)
    throw std::invalid_argument("apply_limited_averages: shape mismatch");
  for (int c = 0; c < f.mesh.cells(); ++c)
    for (int v = 0; v < kVars; ++v) f.coeffs(c, v * kModes) = X(c, v);
}

}  // namespace mhdidp::dg
