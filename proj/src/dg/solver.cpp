#include "mhdidp/dg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mhdidp/dg/limiters.hpp"

namespace mhdidp::dg {

namespace {

using TraceBlock = Eigen::Matrix<double, kTracePoints, kVars>;
using EdgeFlux = Eigen::Matrix<double, kEdgePoints, kVars>;

}  // namespace

Solver::Solver(RunConfig cfg, DGField initial) : cfg_(std::move(cfg)), U_(std::move(initial)) {
  cfg_.validate();
  if (U_.mesh.cells() != cfg_.nx * cfg_.ny)
    throw std::invalid_argument("Solver: field does not match the configured mesh");
}

double Solver::residual(const DGField& U, DGField& R) const {
  const Mesh& m = U.mesh;
  const auto& T = tables();
  const int N = m.cells();
  const double gamma = cfg_.gamma;
  const double scale = 1.0 / (2.0 * m.dx);
  const BoundarySpec& bc = cfg_.bc;
  if (R.mesh.cells() != N) R = DGField(m);

  std::vector<TraceBlock> traces(static_cast<size_t>(N));

#pragma omp parallel for
  for (int c = 0; c < N; ++c) {
    const auto C = U.cell(c);
    traces[static_cast<size_t>(c)] = T.trace_phi * C.transpose();
    const Eigen::Matrix<double, kVolumePoints, kVars> V = T.vol_phi * C.transpose();
    Eigen::Matrix<double, kVolumePoints, kVars> Fx, Fy;
    State8 fx, fy;
    for (int q = 0; q < kVolumePoints; ++q) {
      cartesian_fluxes(V.row(q).transpose(), gamma, fx, fy);
      Fx.row(q) = fx.transpose();
      Fy.row(q) = fy.transpose();
    }
    R.cell(c) = scale * (T.vol_wdxi.transpose() * Fx + T.vol_wdeta.transpose() * Fy).transpose();
  }

  // x-faces: face (i, j), i in [0, nx], is the left face of cell i. y-faces likewise.
  const int nfx = (m.nx + 1) * m.ny;
  const int nfy = m.nx * (m.ny + 1);
  std::vector<EdgeFlux> fxf(static_cast<size_t>(nfx)), fyf(static_cast<size_t>(nfy));
  double alpha_max = 0.0;
  int bad_face = -1;

  auto face_flux = [&](bool xdir, int i, int j, EdgeFlux& out, double& amax) -> bool {
    const int nmax = xdir ? m.nx : m.ny;
    const int s = xdir ? i : j;
    const Edge lo_edge = xdir ? kRight : kTop;  // edge of the minus cell
    const Edge hi_edge = xdir ? kLeft : kBottom;
    const bool periodic = xdir ? bc.periodic_x() : bc.periodic_y();
    int lo = s - 1, hi = s;
    if (periodic) {
      lo = (lo + nmax) % nmax;
      hi = hi % nmax;
    }
    const double nx = xdir ? 1.0 : 0.0, ny = xdir ? 0.0 : 1.0;
    for (int k = 0; k < kEdgePoints; ++k) {
      const double coord = xdir ? m.yc(j) + 0.5 * m.dx * kGaussNodes[k]
                                : m.xc(i) + 0.5 * m.dx * kGaussNodes[k];
      State8 Um, Up;
      if (lo >= 0) {
        const int c = xdir ? m.index(lo, j) : m.index(i, lo);
        Um = traces[static_cast<size_t>(c)].row(lo_edge * kEdgePoints + k).transpose();
      }
      if (hi < nmax) {
        const int c = xdir ? m.index(hi, j) : m.index(i, hi);
        Up = traces[static_cast<size_t>(c)].row(hi_edge * kEdgePoints + k).transpose();
      }
      if (lo < 0) Um = ghost_state(bc, hi_edge, Up, coord);
      if (hi >= nmax) Up = ghost_state(bc, lo_edge, Um, coord);
      State8 F;
      double a = 0.0;
      if (!llf_flux8(Um, Up, nx, ny, gamma, F, a)) return false;
      out.row(k) = F.transpose();
      amax = std::max(amax, a);
    }
    return true;
  };

#pragma omp parallel for reduction(max : alpha_max)
  for (int f = 0; f < nfx; ++f) {
    const int i = f % (m.nx + 1), j = f / (m.nx + 1);
    if (!face_flux(true, i, j, fxf[static_cast<size_t>(f)], alpha_max)) {
#pragma omp critical
      bad_face = f;
    }
  }
#pragma omp parallel for reduction(max : alpha_max)
  for (int f = 0; f < nfy; ++f) {
    const int i = f % m.nx, j = f / m.nx;
    if (!face_flux(false, i, j, fyf[static_cast<size_t>(f)], alpha_max)) {
#pragma omp critical
      bad_face = nfx + f;
    }
  }
  if (bad_face >= 0) {
    std::ostringstream msg;
    msg << "inadmissible trace at " << (bad_face < nfx ? "x" : "y") << "-face "
        << (bad_face < nfx ? bad_face : bad_face - nfx);
    throw DomainError(msg.str());
  }

#pragma omp parallel for
  for (int c = 0; c < N; ++c) {
    const int i = c % m.nx, j = c / m.nx;
    const EdgeFlux& left = fxf[static_cast<size_t>(j * (m.nx + 1) + i)];
    const EdgeFlux& right = fxf[static_cast<size_t>(j * (m.nx + 1) + i + 1)];
    const EdgeFlux& bottom = fyf[static_cast<size_t>(j * m.nx + i)];
    const EdgeFlux& top = fyf[static_cast<size_t>((j + 1) * m.nx + i)];
    // Outward flux: +F on right/top, -F on left/bottom.
    const Eigen::Matrix<double, kModes, kVars> surf =
        T.edge_lift[kRight].transpose() * right - T.edge_lift[kLeft].transpose() * left +
        T.edge_lift[kTop].transpose() * top - T.edge_lift[kBottom].transpose() * bottom;
    R.cell(c) -= scale * surf.transpose();
  }
  return alpha_max;
}

void Solver::limit_stage(DGField& U, StepDiagnostics& d) {
  const CellAverageMatrix<double> avg = cell_averages(U);
  bool all_ok = avg.allFinite();
  if (!all_ok) throw DomainError("non-finite cell average");
  for (Eigen::Index i = 0; i < avg.rows(); ++i) {
    all_ok = all_ok && row_admissible(avg, i, cfg_.eps);
    d.min_average_internal_energy =
        std::min(d.min_average_internal_energy, internal_energy8(avg.row(i).transpose()));
  }

  if (!all_ok) {
    DYOptions<double> opt;
    opt.tol = cfg_.dy_tol;
    opt.max_iters = cfg_.dy_max_iters;
    const auto res = limit_cell_averages(avg, cfg_.eps, opt);
    d.dy_triggered = true;
    d.dy_iters += res.report.n_iters;
    d.dy_max_stage_iters = std::max(d.dy_max_stage_iters, res.report.n_iters);
    const double b = column_sums(avg).cwiseAbs().maxCoeff();
    d.conservation_residual =
        std::max(d.conservation_residual, res.report.conservation_residual / (1.0 + b));
    ++stats_.dy_trigger_stages;
    stats_.max_dy_iters = std::max(stats_.max_dy_iters, res.report.n_iters);
    stats_.all_dy_converged = stats_.all_dy_converged && res.report.converged;
    stats_.slice_calls.merge(res.report.slice_calls);
    if (!res.report.converged) {
      std::ostringstream msg;
      msg << "cell-average limiter did not converge in " << res.report.n_iters << " iterations";
      throw DomainError(msg.str());
    }
    apply_limited_averages(U, res.X);
  }

  d.tvb_cells += tvb_limit(U, cfg_.tvb_m, cfg_.bc);
  const ZhangShuStats zs = zhang_shu_limit(U, cfg_.eps);
  d.zs_cells += zs.limited_cells;
  d.min_rho = zs.min_rho;
  d.min_internal_energy = zs.min_internal_energy;
}

StepDiagnostics Solver::step() {
  StepDiagnostics d;
  d.step = n_ + 1;
  try {
    divfree_project(U_);
    zhang_shu_limit(U_, cfg_.eps);

    DGField R(U_.mesh);
    const double alpha = residual(U_, R);
    double dt = cfg_.fixed_dt ? *cfg_.fixed_dt : cfg_.cfl * U_.mesh.dx / alpha;
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("non-positive time step");
    const double remaining = cfg_.t_final - t_;
    // Snap to t_final when within roundoff of it, so fixed-step runs land exactly.
    if (dt >= remaining * (1.0 - 1e-12)) dt = remaining;
    d.dt = dt;

    DGField U1 = U_;
    U1.coeffs += dt * R.coeffs;
    limit_stage(U1, d);

    residual(U1, R);
    DGField U2 = U_;
    U2.coeffs = 0.75 * U_.coeffs + 0.25 * (U1.coeffs + dt * R.coeffs);
    limit_stage(U2, d);

    residual(U2, R);
    DGField U3 = U_;
    U3.coeffs = (1.0 / 3.0) * U_.coeffs + (2.0 / 3.0) * (U2.coeffs + dt * R.coeffs);
    limit_stage(U3, d);

    U_ = std::move(U3);
    if (dt == remaining) t_ = cfg_.t_final;
    else t_ = cfg_.fixed_dt ? static_cast<double>(n_ + 1) * dt : t_ + dt;
  } catch (const SolverAbort&) {
    throw;
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "step " << d.step << " at t=" << t_ << ": " << e.what();
    throw SolverAbort(msg.str(), U_, t_, n_);
  }
  ++n_;
  stats_.steps = n_;
  if (d.dy_triggered) ++stats_.dy_trigger_steps;
  d.time = t_;
  return d;
}

RunResult run_case(const RunConfig& cfg,
                   const std::function<void(const Solver&, const StepDiagnostics&)>& observer) {
  Solver solver(cfg, init_case(cfg));
  RunResult out;
  while (!solver.finished()) {
    if (solver.stats().steps >= cfg.max_steps)
      throw SolverAbort("step limit reached", solver.field(), solver.time(), solver.stats().steps);
    const StepDiagnostics d = solver.step();
    out.diagnostics.push_back(d);
    if (observer) observer(solver, d);
  }
  out.field = solver.field();
  out.time = solver.time();
  out.stats = solver.stats();
  return out;
}

}  // namespace mhdidp::dg
