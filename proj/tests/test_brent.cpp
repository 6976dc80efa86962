#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mhdidp/brent.hpp"
#include "mhdidp/slicing.hpp"
#include "oracles.hpp"

using namespace mhdidp;

TEST_CASE("quadratic is located exactly") {
  int calls = 0;
  const auto r = brent_minimize<double>([&](double x) { ++calls; return (x - 2) * (x - 2); }, 0.0, 5.0);
  CHECK(std::abs(r.x_min - 2.0) <= 1e-12);
  CHECK(r.converged);
  CHECK(r.n_evals == calls);
  CHECK(r.n_evals <= 203);
}

TEST_CASE("nonsmooth convex against golden section") {
  auto f = [](double x) { return std::abs(x - 1); };
  const auto r = brent_minimize<double>(f, 0.0, 3.0);
  const double g = oracle::golden_min(f, 0.0, 3.0, 1e-12);
  CHECK(std::abs(r.x_min - 1.0) <= 1e-10);
  CHECK(std::abs(r.x_min - g) <= 1e-10);
  CHECK(r.n_evals <= 203);
}

TEST_CASE("manufactured d2 curve") {
  MHDPoint<double> pt{1.0, SmallVector<double>(Eigen::Vector3d(1.25, 2, 0)), 2.0,
                      SmallVector<double>(Eigen::Vector3d(5, 1.7, 0))};
  const auto r = brent_minimize<double>([&](double b) { return eval_d2(pt, 1e-13, b); }, 0.121, 27.89);
  CHECK(r.x_min == doctest::Approx(5.44).epsilon(0.01 / 5.44));
}

TEST_CASE("bad arguments") {
  auto f = [](double x) { return x * x; };
  CHECK_THROWS_AS(brent_minimize<double>(f, 1.0, 1.0), std::invalid_argument);
  BrentConfig<double> cfg;
  cfg.abs_tol = 0;
  CHECK_THROWS_AS(brent_minimize<double>(f, 0.0, 1.0, cfg), std::invalid_argument);
}

TEST_CASE("random strictly convex functions: interval, grid optimality, evaluation cap") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> U(-5, 5);
  for (int k = 0; k < 200; ++k) {
    const double a = U(gen), b = a + 0.1 + std::abs(U(gen));
    const double c = U(gen), s = 0.1 + std::abs(U(gen));
    auto f = [&](double x) { return std::cosh(s * (x - c)) + 0.3 * std::abs(x - c); };
    BrentConfig<double> cfg;
    cfg.max_iters = 5 + k % 50;
    const auto r = brent_minimize<double>(f, a, b, cfg);
    CHECK(r.x_min >= a);
    CHECK(r.x_min <= b);
    CHECK(r.n_evals >= 1);
    CHECK(r.n_evals <= cfg.max_iters + 3);
    if (!r.converged) continue;
    const double tol = cfg.rel_tol * std::abs(r.x_min) + cfg.abs_tol;
    double best = 1e300, xbest = a;
    for (int i = 0; i < 10000; ++i) {
      const double x = a + (b - a) * i / 9999.0;
      if (f(x) < best) {
        best = f(x);
        xbest = x;
      }
    }
    const double spacing = (b - a) / 9999.0;
    CHECK(std::abs(r.x_min - xbest) <= spacing + 2 * tol);
  }
}
