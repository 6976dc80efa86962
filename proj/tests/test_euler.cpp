#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "checks.hpp"
#include "mhdidp/cubic.hpp"
#include "mhdidp/euler_projection.hpp"

using namespace mhdidp;
using Vec = SmallVector<double>;

TEST_CASE("cubic: factorable cases") {
  const auto r = cubic_real_roots(-1.0, 0.0);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(-1.0));
  CHECK(r[1] == doctest::Approx(0.0));
  CHECK(r[2] == doctest::Approx(1.0));
  const auto c = cubic_real_roots(0.0, -8.0);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == doctest::Approx(2.0));
}

TEST_CASE("cubic: random coefficients against sign-change bisection") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> U(-20, 20);
  for (int k = 0; k < 200; ++k) {
    const double p = U(gen), q = U(gen);
    const auto roots = cubic_real_roots(p, q);
    for (double m : roots)
      CHECK(std::abs((m * m + p) * m + q) <= 1e-10 * std::max(1.0, std::abs(m * m * m)));
    const auto ref = oracle::cubic_roots_bisection(p, q);
    // Double roots do not change sign; skip the measure-zero tangent case.
    if (static_cast<int>(ref.size()) != roots.size()) continue;
    for (size_t i = 0; i < ref.size(); ++i)
      CHECK(std::abs(roots[static_cast<int>(i)] - ref[i]) <= 1e-10 * std::max(1.0, std::abs(ref[i])));
  }
}

TEST_CASE("slice projection: examples") {
  const FluidPoint<double> ok{1.0, Vec(Eigen::Vector3d::Zero()), 1.0};
  const auto id = project_slice(ok, 1e-13, 0.0);
  CHECK(id.rho == 1.0);
  CHECK(id.E == 1.0);
  CHECK(id.dist2 == 0.0);

  const FluidPoint<double> cold{1.0, Vec(Eigen::Vector3d::Zero()), -1.0};
  const auto p = project_slice(cold, 1e-6, 0.0);
  CHECK(p.rho == doctest::Approx(1.0));
  CHECK(p.m.norm() == 0.0);
  CHECK(p.E == doctest::Approx(1e-6).epsilon(1e-12));
  const auto o = oracle::euler_projection(1.0, 0.0, -1.0, 1e-6, 0.0);
  CHECK(std::abs(p.dist2 - o.dist2) <= 1e-10);
}

TEST_CASE("slice projection: f(0) of the manufactured point reproduces the interval lower end") {
  const FluidPoint<double> x{1.0, Vec(Eigen::Vector3d(1.25, 2, 0)), 2.0};
  const double f0 = project_slice(x, 1e-13, 0.0).dist2;
  const double zn = Eigen::Vector3d(5, 1.7, 0).norm();
  const double low = std::pow(zn / (1 + std::sqrt(f0) + zn * zn / 2), 2);
  CHECK(low == doctest::Approx(0.121).epsilon(0.01 / 0.121));
}

TEST_CASE("slice projection: very large momentum stays accurate") {
  const FluidPoint<double> x{1.41, Vec(Eigen::Vector3d(1124, -0.31, 0)), 4.51e5};
  for (double beta : {0.0, 100.0, 2000.0}) {
    const auto p = project_slice(x, 1e-6, beta);
    const auto o = oracle::euler_projection(1.41, x.v.norm(), 4.51e5, 1e-6, beta);
    CHECK(p.dist2 <= o.dist2 * (1 + 1e-8) + 1e-10);
    CHECK(p.E - p.m.squaredNorm() / (2 * p.rho) >= 1e-6 + beta / 2 - 1e-12 * p.E);
  }
}

TEST_CASE("slice projection: oracle, cloud, KKT, idempotence (reduced sample)") {
  const auto c = checks::euler_slice(1000, 20000);
  CHECK(c.oracle_gap <= 1e-8);
  CHECK(c.cloud_violation <= 1e-12);  // roundoff only
  CHECK(c.kkt <= 1e-8);
  CHECK(c.idempotence <= 1e-14);
  CHECK(c.infeasibility <= 1e-12);
}

TEST_CASE("slice projection: monotone and half-Lipschitz in beta") {
  CHECK(props::slice_f_suite(500) == 0);
}
