#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lowmach/errors.hpp"
#include "lowmach/problems.hpp"

using namespace lowmach;

namespace {

double u1(const CellState& s) { return s.mom[0] / s.rho; }
double u2(const CellState& s) { return s.mom[1] / s.rho; }

}  // namespace

TEST_CASE("standard periodic initial data") {
  for (double eps : {0.5, 0.01}) {
    const auto s = standard_periodic(eps).ic(0.0, 0.0);
    CHECK(s.rho == doctest::Approx(1.0));
    CHECK(u1(s) == doctest::Approx(1.0));
  }
  const auto p = standard_periodic(0.5);
  const auto s = p.ic(0.25, 0.0);
  CHECK(s.rho == doctest::Approx(1.25));
  CHECK(u1(s) == doctest::Approx(1.5));
  CHECK(p.dim == 1);
  CHECK(p.params.gamma == 2.0);
  CHECK(p.params.kappa == 1.0);
  const auto f = sample_initial_condition(p.ic, p.make_grid(100, 1));
  CHECK(integrate(f.rho, f.grid) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("colliding acoustic initial data") {
  const auto p = colliding_acoustic(0.1);
  CHECK(p.lo[0] == -1.0);
  CHECK(p.hi[0] == 1.0);
  CHECK(p.params.gamma == 1.4);
  const auto centre = p.ic(0.0, 0.0);
  CHECK(centre.rho == doctest::Approx(0.955));
  CHECK(u1(centre) == doctest::Approx(0.0));
  const auto half = p.ic(0.5, 0.0);
  CHECK(half.rho == doctest::Approx(1.055));
  CHECK(u1(half) == doctest::Approx(-2.0 * std::sqrt(1.4)));
  for (double x : {0.1, 0.37, 0.8}) CHECK(u1(p.ic(-x, 0.0)) == doctest::Approx(-u1(p.ic(x, 0.0))));
}

TEST_CASE("Riemann initial data") {
  const double eps = 0.3, e2 = eps * eps;
  const auto p = riemann(eps);
  auto a = p.ic(0.1, 0.0);
  CHECK(a.rho == doctest::Approx(1.0));
  CHECK(a.mom[0] == doctest::Approx(1.0 - e2 / 2));
  a = p.ic(0.25, 0.0);
  CHECK(a.rho == doctest::Approx(1.0 + e2));
  CHECK(a.mom[0] == doctest::Approx(1.0));
  a = p.ic(0.5, 0.0);
  CHECK(a.rho == doctest::Approx(1.0));
  CHECK(a.mom[0] == doctest::Approx(1.0 + e2 / 2));
  a = p.ic(0.75, 0.0);
  CHECK(a.rho == doctest::Approx(1.0 - e2));
  CHECK(a.mom[0] == doctest::Approx(1.0));
  a = p.ic(0.9, 0.0);
  CHECK(a.mom[0] == doctest::Approx(1.0 - e2 / 2));
}

TEST_CASE("Gresho vortex initial data") {
  const auto p = gresho(0.1);
  CHECK(p.dim == 2);
  CHECK(p.default_t_final == doctest::Approx(0.4 * std::numbers::pi));
  CHECK(p.background_u1 == 0.1);
  const auto outside = p.ic(0.95, 0.95);
  CHECK(outside.rho == doctest::Approx(1.0));
  CHECK(u1(outside) == doctest::Approx(0.1));
  CHECK(u2(outside) == doctest::Approx(0.0));
  CHECK(gresho_pressure_perturbation(0.0) == doctest::Approx(2.0 - std::log(16.0)));
  CHECK(gresho_pressure_perturbation(0.0) == doctest::Approx(-0.7726).epsilon(1e-4));
  const auto centre = p.ic(0.5, 0.5);
  CHECK(u1(centre) == doctest::Approx(0.1));
  CHECK(u2(centre) == doctest::Approx(0.0));
  CHECK(centre.rho == doctest::Approx(1.0 + 0.01 * (2.0 - std::log(16.0)) / 1.4));
  const double R = 0.4, h = 1e-15;
  CHECK(gresho_swirl_velocity(R / 2 - h) == doctest::Approx(1.0));
  CHECK(gresho_swirl_velocity(R / 2 + h) == doctest::Approx(1.0));
  CHECK(std::abs(gresho_pressure_perturbation(R / 2 - h) - gresho_pressure_perturbation(R / 2 + h)) <
        1e-12);
  CHECK(std::abs(gresho_pressure_perturbation(R - h) - gresho_pressure_perturbation(R + h)) < 1e-12);
  CHECK(std::abs(gresho_swirl_velocity(R - h)) < 1e-12);
  // Swirl at x = (0.5 + 0.1, 0.5): r = R/4, u_theta = 0.5, pointing in +x2.
  const auto s = p.ic(0.6, 0.5);
  CHECK(u1(s) == doctest::Approx(0.1));
  CHECK(u2(s) == doctest::Approx(0.5));
}

TEST_CASE("travelling vortex initial data") {
  const auto p = travelling_vortex(0.1);
  CHECK(p.default_t_final == doctest::Approx(1.0 / 0.6));
  const auto outside = p.ic(0.05, 0.05);
  CHECK(outside.rho == doctest::Approx(110.0));
  CHECK(u1(outside) == doctest::Approx(0.6));
  CHECK(u2(outside) == doctest::Approx(0.0));
  const auto centre = p.ic(0.5, 0.5);
  CHECK(u1(centre) == doctest::Approx(0.6));
  CHECK(u2(centre) == doctest::Approx(0.0));
  // The vortex edge sits at distance 1/4 from the centre.
  const auto inside = p.ic(0.5 + 0.25 - 1e-10, 0.5);
  CHECK(inside.rho == doctest::Approx(110.0).epsilon(1e-12));
  CHECK(travelling_vortex_k(std::numbers::pi) ==
        doctest::Approx(-2.0 + 0.125 + 0.75 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("densities stay positive for eps below one") {
  for (const char* name :
       {"standard_periodic", "colliding_acoustic", "riemann", "gresho", "travelling_vortex"}) {
    for (double eps : {1e-6, 0.1, 0.5, 0.99}) {
      const auto p = problem_by_name(name, eps);
      const int n = p.dim == 1 ? 2000 : 120;
      const auto f = sample_initial_condition(p.ic, p.make_grid(n, n));
      for (double r : f.rho) CHECK(r > 0.0);
    }
  }
}

TEST_CASE("well-prepared data stays eps^2 close to a constant") {
  const double eps = 0.05;
  const auto f = sample_initial_condition(standard_periodic(eps).ic,
                                          standard_periodic(eps).make_grid(500, 1));
  for (double r : f.rho) CHECK(std::abs(r - 1.0) <= eps * eps * (1 + 1e-12));
  const auto g = gresho(eps);
  const auto fg = sample_initial_condition(g.ic, g.make_grid(60, 60));
  for (double r : fg.rho) CHECK(std::abs(r - 1.0) <= eps * eps * std::log(16.0));
}

TEST_CASE("unknown problem names are rejected") {
  CHECK_THROWS_AS(problem_by_name("sod", 0.1), ConfigError);
  CHECK(problem_by_name("gresho", 0.1).id == ProblemId::Gresho);
}
