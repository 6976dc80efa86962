#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhdidp/dg/cases.hpp"
#include "mhdidp/dg/field.hpp"
#include "mhdidp/dy_limiter.hpp"

namespace mhdidp::dg {

struct StepDiagnostics {
  long step = 0;
  double time = 0.0;  // time at the end of the step
  double dt = 0.0;
  bool dy_triggered = false;
  int dy_iters = 0;  // summed over the three stages
  int dy_max_stage_iters = 0;
  double conservation_residual = 0.0;
  // Minima over the Zhang-Shu point set after the last stage.
  double min_rho = 0.0;
  double min_internal_energy = 0.0;
  // Minimum cell-average internal energy seen before limiting, over the three stages.
  double min_average_internal_energy = std::numeric_limits<double>::infinity();
  int tvb_cells = 0;
  int zs_cells = 0;
};

/// Hard failure of a run; carries the last field for postmortem output.
class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, DGField snapshot, double time, long step)
      : std::runtime_error(what), snapshot_(std::move(snapshot)), time_(time), step_(step) {}
  const DGField& snapshot() const { return snapshot_; }
  double time() const { return time_; }
  long step() const { return step_; }

 private:
  DGField snapshot_;
  double time_;
  long step_;
};

struct RunStats {
  long steps = 0;
  long dy_trigger_steps = 0;
  long dy_trigger_stages = 0;
  int max_dy_iters = 0;  // per single limiter solve
  bool all_dy_converged = true;
  SliceCallStats slice_calls;
};

class Solver {
 public:
  Solver(RunConfig cfg, DGField initial);

  /// Semi-discrete right-hand side R(U) as modal coefficients; returns max alpha over faces.
  double residual(const DGField& U, DGField& R) const;
  /// Per-stage limiting chain: cell-average limiter if needed, TVB, Zhang-Shu.
  void limit_stage(DGField& U, StepDiagnostics& d);
  /// One SSP-RK3 step, clipped so the run ends exactly at t_final.
  StepDiagnostics step();

  const DGField& field() const { return U_; }
  double time() const { return t_; }
  bool finished() const { return t_ >= cfg_.t_final * (1.0 - 1e-14); }
  const RunConfig& config() const { return cfg_; }
  const RunStats& stats() const { return stats_; }

 private:
  RunConfig cfg_;
  DGField U_;
  double t_ = 0.0;
  long n_ = 0;
  RunStats stats_;
};

struct RunResult {
  DGField field;
  double time = 0.0;
  std::vector<StepDiagnostics> diagnostics;
  RunStats stats;
};

/// Runs the configured case from its initial data; `observer` sees every completed step.
RunResult run_case(const RunConfig& cfg,
                   const std::function<void(const Solver&, const StepDiagnostics&)>& observer = {});

}  // namespace mhdidp::dg
