#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "checks.hpp"
#include "mhdidp/slicing.hpp"

using namespace mhdidp;
using Vec = SmallVector<double>;

namespace {
MHDPoint<double> manufactured() {
  return {1.0, Vec(Eigen::Vector3d(1.25, 2, 0)), 2.0, Vec(Eigen::Vector3d(5, 1.7, 0))};
}
// The three-digit jet values (1.41, 1124, -0.31, 0, 4.51e5, 44.9, -0.026, 0) round to an
// admissible state; this is a nearby out-of-bound point consistent with that rounding.
MHDPoint<double> astro() {
  return {1.405, Vec(Eigen::Vector3d(1124.4, -0.31, 0)), 4.508e5, Vec(Eigen::Vector3d(44.9166, -0.026, 0))};
}
}  // namespace

TEST_CASE("manufactured point") {
  const auto r = project_admissible(manufactured(), 1e-13);
  CHECK(std::abs(r.beta_low - 0.121) <= 0.01);
  CHECK(std::abs(r.beta_high - 27.89) <= 0.01);
  CHECK(std::abs(r.beta_star - 5.44) <= 0.01);
  CHECK(r.converged);
  CHECK(is_admissible(r.state, 1e-13));
  CHECK(r.n_slice_calls >= 16);
  CHECK(r.n_slice_calls <= 35);
}

TEST_CASE("astro point sits at the top of its interval") {
  const auto r = project_admissible(astro(), 1e-6);
  CHECK(r.beta_low == doctest::Approx(1.98e-3).epsilon(0.01));
  CHECK(r.beta_high == doctest::Approx(2017.5).epsilon(0.01));
  CHECK(std::abs(r.beta_star - r.beta_high) <= 1e-3 * r.beta_high);
  CHECK(is_admissible(r.state, 1e-6));
  CHECK(r.n_slice_calls >= 16);
  CHECK(r.n_slice_calls <= 35);
}

TEST_CASE("the rounded jet values are admissible and project to themselves") {
  const MHDPoint<double> r{1.41, Vec(Eigen::Vector3d(1124, -0.31, 0)), 4.51e5, Vec(Eigen::Vector3d(44.9, -0.026, 0))};
  CHECK(is_admissible(r.as_state(), 1e-6));
  CHECK(project_admissible(r, 1e-6).n_slice_calls == 0);
}

TEST_CASE("admissible input and zero field") {
  const MHDPoint<double> ok{1.0, Vec(Eigen::Vector3d(0.1, 0, 0)), 3.0, Vec(Eigen::Vector3d(1, 0, 0))};
  const auto r = project_admissible(ok, 1e-13);
  CHECK(r.n_slice_calls == 0);
  CHECK(r.dist2 == 0.0);
  CHECK(r.state.E == 3.0);

  const MHDPoint<double> z0{1.0, Vec(Eigen::Vector3d(1, 0, 0)), 0.1, Vec(Eigen::Vector3d::Zero())};
  const auto p = project_admissible(z0, 1e-13);
  CHECK(p.state.B.norm() == 0.0);
  const auto e = project_slice(z0.fluid(), 1e-13, 0.0);
  CHECK(p.state.rho == e.rho);
  CHECK(p.state.E == e.E);
}

TEST_CASE("eval_d2 at beta = |z|^2 with a feasible fluid part is f there") {
  const MHDPoint<double> pt{1.0, Vec(Eigen::Vector3d::Zero()), 1.0, Vec(Eigen::Vector3d(1, 1, 0))};
  const double b = pt.z.squaredNorm();
  CHECK(eval_d2(pt, 1e-13, b) == doctest::Approx(project_slice(pt.fluid(), 1e-13, b).dist2));
}

TEST_CASE("search interval is clamped") {
  const auto [lo, hi] = search_interval(2.0, 0.0);
  CHECK(lo >= 0.0);
  CHECK(lo <= hi);
  CHECK(hi == 4.0);
}

TEST_CASE("oracle equivalence, KKT, admissibility (reduced sample)") {
  const auto c = checks::projection_oracle(300, 1000, 3);
  CHECK(c.inadmissible == 0);
  CHECK(c.argmin_outside == 0);
  CHECK(c.max_rel_gap <= 1e-8);
  CHECK(c.kkt <= 1e-8);
}

TEST_CASE("idempotence, nonexpansiveness, interval, d2 convexity") {
  CHECK(props::slicing_suite(500) == 0);
}
