#pragma once

#include <optional>
#include <string>

#include "mhdidp/dg/field.hpp"

namespace mhdidp::dg {

enum class CaseId { alfven, rotor, orszag_tang, jet };

CaseId parse_case(const std::string& s);
std::string to_string(CaseId c);

struct RunConfig {
  CaseId case_id = CaseId::alfven;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  int nx = 16;
  int ny = 16;
  double gamma = 5.0 / 3.0;
  double eps = 1e-13;
  double cfl = 0.2;
  double tvb_m = 100.0;
  double t_final = 1.0;
  std::optional<double> fixed_dt;
  BoundarySpec bc;
  int output_every = 0;  // steps between field dumps; 0 writes only the final field
  std::string out_dir = "out";
  double b0 = 0.0;  // jet only
  double dy_tol = 1e-12;
  int dy_max_iters = 500;
  long max_steps = 10000000;

  Mesh mesh() const;
  /// Throws std::invalid_argument on a bad combination (non-square cells, cfl <= 0, ...).
  void validate() const;
};

/// Benchmark defaults at desk resolution. For the Alfven case the fixed step
/// (0.08/sqrt5) dx follows the mesh.
RunConfig default_config(CaseId c);
/// Recomputes derived values (Alfven fixed dt) after nx/ny changed.
void refresh_derived(RunConfig& cfg);

/// L2 projection (3x3 Gauss) of the case's initial data.
DGField init_case(const RunConfig& cfg);

/// Circularly polarized Alfven wave, conserved variables at (x, y, t).
State8 alfven_exact(double x, double y, double t, double gamma);

struct ErrorReport {
  double err1 = 0.0;
  double errinf = 0.0;
  std::optional<double> rate1;
  std::optional<double> rateinf;
};

/// Errors of v_perp, v_z, B_perp, B_z against the exact Alfven wave.
/// Per cell, the mean of the four component norms, with the discrete nodal norms
/// L1_h(K) = |K| * mean |e| and Linf_h(K) = max |e| over the 3x3 Gauss-Lobatto nodes.
/// err1 sums the cell terms, errinf takes their max. Throws std::invalid_argument for other cases.
ErrorReport compute_errors(const DGField& f, const RunConfig& cfg, double t);

/// log2 of the error ratio between a mesh and its refinement by 2.
void fill_rates(const ErrorReport& coarse, ErrorReport& fine);

}  // namespace mhdidp::dg
