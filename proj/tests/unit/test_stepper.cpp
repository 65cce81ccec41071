#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lowmach/errors.hpp"
#include "lowmach/problems.hpp"
#include "lowmach/stepper.hpp"
#include "oracles.hpp"

using namespace lowmach;

namespace {

Field random_field(const PeriodicGrid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> r(0.6, 1.8), u(-1.0, 1.0);
  Field f(g);
  for (int c = 0; c < g.cells(); ++c) {
    f.rho[c] = r(rng);
    for (int k = 0; k < g.dim(); ++k) f.mom[k][c] = f.rho[c] * u(rng);
  }
  return f;
}

SchemeOptions options_for(int type, double q = 0.0, int order = 1) {
  SchemeOptions o;
  o.disc.kind = static_cast<SpaceKind>(type);
  o.disc.q = q;
  o.disc.order = order;
  return o;
}

double max_diff(const Field& a, const Field& b) {
  double d = 0.0;
  for (int c = 0; c < a.cells(); ++c) {
    d = std::max(d, std::abs(a.rho[c] - b.rho[c]));
    for (int k = 0; k < a.dim(); ++k) d = std::max(d, std::abs(a.mom[k][c] - b.mom[k][c]));
  }
  return d;
}

// First order type 2 step written out with explicit index arithmetic.
Field scripted_type2_step(const Field& f, const ModelParams& p, double dt) {
  const int n = f.cells();
  const double dx = f.grid.dx(0);
  auto at = [n](int i) { return (i % n + n) % n; };
  std::vector<double> u(n), t(n);
  for (int i = 0; i < n; ++i) {
    u[i] = f.mom[0][i] / f.rho[i];
    t[i] = f.mom[0][i] * u[i];
  }
  auto face_u = [&](int i) { return 0.5 * (u[i] + u[at(i + 1)]); };
  auto upwind = [&](const std::vector<double>& q, int i) {
    const double w = face_u(i);
    return w > 0 ? q[i] * w : q[at(i + 1)] * w;
  };
  std::vector<double> dt_dt(n), rhs(n);
  for (int i = 0; i < n; ++i) dt_dt[i] = (t[at(i + 1)] - t[at(i - 1)]) / (2 * dx);
  double rho0 = 0.0;
  for (int i = 0; i < n; ++i) rho0 += f.rho[i] / n;
  for (int i = 0; i < n; ++i) {
    const double mass = (upwind(f.rho, i) - upwind(f.rho, at(i - 1))) / dx;
    const double d2 = (dt_dt[at(i + 1)] - dt_dt[at(i - 1)]) / (2 * dx);
    rhs[i] = f.rho[i] - dt * mass + dt * dt * d2;
  }
  const double dp = p.kappa * p.gamma * std::pow(rho0, p.gamma - 1);
  const double alpha = dt * dt / (p.eps * p.eps) * dp;
  const auto rho = oracle::dense_solve(oracle::helmholtz_matrix(n, 1, dx, 1.0, alpha), rhs);
  std::vector<double> plin(n);
  for (int i = 0; i < n; ++i) plin[i] = p.kappa * std::pow(rho0, p.gamma) + (rho[i] - rho0) * dp;
  Field out(f.grid);
  for (int i = 0; i < n; ++i) {
    const double conv = (upwind(f.mom[0], i) - upwind(f.mom[0], at(i - 1))) / dx;
    const double grad = (plin[at(i + 1)] - plin[at(i - 1)]) / (2 * dx);
    out.rho[i] = rho[i];
    out.mom[0][i] = f.mom[0][i] - dt * conv - dt / (p.eps * p.eps) * grad;
  }
  return out;
}

}  // namespace

TEST_CASE("time step selection") {
  Field f(PeriodicGrid::line(100, 0.0, 1.0));
  for (int c = 0; c < 100; ++c) {
    f.rho[c] = 1.0;
    f.mom[0][c] = c == 10 ? -2.0 : 1.0;
  }
  StepControls ctl;
  ctl.cfl = 0.5;
  ctl.t_final = 10.0;
  CHECK(compute_dt(f, ctl) == doctest::Approx(0.0025));
  ctl.dt_cap = 0.001;
  CHECK(compute_dt(f, ctl) == doctest::Approx(0.001));
  ctl.dt_cap.reset();
  CHECK(compute_dt(f, ctl, 9.999) == doctest::Approx(0.001));
  CHECK(compute_dt(f, ctl, 9.999) + 9.999 == 10.0);

  const auto prob = standard_periodic(0.5);
  const auto sp = sample_initial_condition(prob.ic, prob.make_grid(200, 1));
  ctl.cfl = 0.8;
  double umax = 0.0;
  for (int c = 0; c < 200; ++c) umax = std::max(umax, std::abs(sp.velocity(c, 0)));
  CHECK(compute_dt(sp, ctl) == doctest::Approx(0.8 * 0.005 / umax));
  CHECK(umax == doctest::Approx(1.5).epsilon(1e-3));

  Field still(PeriodicGrid::line(8, 0.0, 1.0));
  for (int c = 0; c < 8; ++c) still.mom[0][c] = 0.0;
  CHECK_THROWS_AS(compute_dt(still, ctl), DomainError);
  ctl.dt_cap = 0.01;
  CHECK(compute_dt(still, ctl) == doctest::Approx(0.01));
}

TEST_CASE("step controls validation") {
  StepControls ctl;
  CHECK_NOTHROW(ctl.validate());
  ctl.cfl = 0.0;
  CHECK_THROWS(ctl.validate());
  ctl.cfl = 1.5;
  CHECK_THROWS(ctl.validate());
  ctl.cfl = 1.0;
  ctl.dt_cap = -1.0;
  CHECK_THROWS(ctl.validate());
  ctl.dt_cap.reset();
  ctl.rho0 = 0.0;
  CHECK_THROWS(ctl.validate());
}

TEST_CASE("linearised pressure") {
  StepControls ctl;
  ctl.rho0 = 1.0;
  const ModelParams p{1.0, 2.0, 1.0};
  const auto lin = linearised_pressure(std::vector<double>{1.0, 1.01}, ctl, p);
  CHECK(lin[0] == doctest::Approx(1.0));
  CHECK(lin[1] == doctest::Approx(1.02));
  CHECK(pressure(1.01, p) == doctest::Approx(1.0201));
  ctl.rho0 = 110.0;
  const auto tv = linearised_pressure(std::vector<double>{110.0}, ctl, {1.0, 1.4, 0.1});
  CHECK(tv[0] == doctest::Approx(std::pow(110.0, 1.4)));
}

TEST_CASE("reference density defaults to the initial mean") {
  Field f(PeriodicGrid::line(4, 0.0, 1.0));
  f.rho = {1.0, 2.0, 3.0, 2.0};
  CHECK(*resolve_reference_density({}, f).rho0 == doctest::Approx(2.0));
  StepControls fixed;
  fixed.rho0 = 5.0;
  CHECK(*resolve_reference_density(fixed, f).rho0 == 5.0);
}

TEST_CASE("admissibility check") {
  Field f(PeriodicGrid::line(4, 0.0, 1.0));
  CHECK_NOTHROW(check_admissible(f, f, 0.1, 3));
  Field bad = f;
  bad.rho[2] = -0.1;
  CHECK_THROWS_AS(check_admissible(bad, f, 0.1, 3), BlowUpError);
  bad = f;
  bad.mom[0][1] = NAN;
  try {
    check_admissible(bad, f, 0.25, 7);
    FAIL("expected a blow-up");
  } catch (const BlowUpError& e) {
    CHECK(e.step() == 7);
    CHECK(e.time() == 0.25);
    CHECK(e.last_valid().rho == f.rho);
  }
}

TEST_CASE("first order step matches a scripted evaluation") {
  const auto prob = standard_periodic(0.5);
  const auto f = sample_initial_condition(prob.ic, prob.make_grid(200, 1));
  StepControls ctl;
  ctl.cfl = 0.8;
  ctl.t_final = 5.0;
  const double dt = compute_dt(f, ctl);
  const auto ours = first_order_step(f, prob.params, ctl, options_for(2), dt);
  const auto scripted = scripted_type2_step(f, prob.params, dt);
  CHECK(max_diff(ours, scripted) < 1e-12);

  const auto rnd = random_field(PeriodicGrid::line(40, 0.0, 2.0), 12);
  const ModelParams p{1.0, 1.4, 0.2};
  const auto a = first_order_step(rnd, p, ctl, options_for(2), 0.01);
  CHECK(max_diff(a, scripted_type2_step(rnd, p, 0.01)) < 1e-12);
}

TEST_CASE("ARS(1,1,1) stage loop equals the first order step") {
  for (unsigned seed = 0; seed < 12; ++seed) {
    const auto g = seed % 2 ? PeriodicGrid::line(32, 0.0, 1.0)
                            : PeriodicGrid::rectangle(8, 10, {0, 0}, {1, 1});
    const auto f = random_field(g, seed);
    const ModelParams p{1.0, seed % 3 ? 1.4 : 2.0, std::array{1.0, 0.1, 1e-3}[seed % 3]};
    const auto opt = options_for(1 + seed % 3, seed % 3 == 2 ? 0.7 : 0.0, 1 + (seed / 3) % 2);
    const double dt = 0.4 * compute_dt(f, {});
    const auto a = first_order_step(f, p, {}, opt, dt);
    const auto b = imex_rk_step(f, ars111(), p, {}, opt, dt);
    CHECK(max_diff(a, b) < 1e-12);
  }
}

TEST_CASE("constant states are fixed points") {
  for (const auto& g : {PeriodicGrid::line(16, 0.0, 1.0),
                        PeriodicGrid::rectangle(6, 6, {0, 0}, {1, 1})}) {
    Field f(g);
    for (int c = 0; c < g.cells(); ++c) {
      f.rho[c] = 1.3;
      f.mom[0][c] = 0.4;
      if (g.dim() == 2) f.mom[1][c] = -0.2;
    }
    for (int type : {1, 2, 3}) {
      const auto opt = options_for(type, type == 3 ? 1.0 : 0.0, 2);
      const ModelParams p{1.0, 1.4, 0.01};
      CHECK(max_diff(first_order_step(f, p, {}, opt, 0.02), f) < 1e-13);
      CHECK(max_diff(imex_rk_step(f, ars222(), p, {}, opt, 0.02), f) < 1e-13);
    }
  }
}

TEST_CASE("steps conserve mass and momentum") {
  for (unsigned seed = 0; seed < 12; ++seed) {
    const auto g = seed % 2 ? PeriodicGrid::line(30, 0.0, 1.0)
                            : PeriodicGrid::rectangle(9, 7, {0, 0}, {1, 2});
    const auto f = random_field(g, 40 + seed);
    const ModelParams p{1.0, 1.4, seed % 4 == 0 ? 1e-4 : 0.3};
    const auto opt = options_for(1 + seed % 3, 1.0, 1 + seed % 2);
    const auto tableau = seed % 2 ? ars111() : ars222();
    const auto next = imex_rk_step(f, tableau, p, {}, opt, 0.5 * compute_dt(f, {}));
    auto rel = [&](const std::vector<double>& a, const std::vector<double>& b) {
      double scale = 0.0;
      for (double v : a) scale += std::abs(v);
      return std::abs(integrate(a, g) - integrate(b, g)) / (scale * g.cell_measure());
    };
    CHECK(rel(f.rho, next.rho) < 1e-12);
    for (int k = 0; k < g.dim(); ++k) CHECK(rel(f.mom[k], next.mom[k]) < 1e-12);
  }
}

TEST_CASE("nonlinear pressure variant") {
  const auto f = random_field(PeriodicGrid::line(20, 0.0, 1.0), 3);
  const ModelParams p{1.0, 2.0, 0.5};
  auto opt = options_for(2);
  const auto lin = first_order_step(f, p, {}, opt, 0.01);
  opt.nonlinear_pressure = true;
  const auto nonlin = first_order_step(f, p, {}, opt, 0.01);
  CHECK(lin.rho == nonlin.rho);
  CHECK(max_diff(lin, nonlin) > 1e-8);
  CHECK(integrate(nonlin.mom[0], f.grid) == doctest::Approx(integrate(f.mom[0], f.grid)).epsilon(1e-12));
}

TEST_CASE("ARS(2,2,2) is more accurate in time than ARS(1,1,1)") {
  const auto prob = standard_periodic(0.5);
  const auto f0 = sample_initial_condition(prob.ic, prob.make_grid(100, 1));
  auto solve = [&](const DoubleTableau& t, int steps) {
    StepControls ctl;
    ctl.cfl = 1.0;
    ctl.t_final = 0.05;
    ctl.dt_cap = ctl.t_final / steps;
    const auto res = run(f0, prob.params, t, options_for(2), ctl);
    CHECK(res.steps == steps);
    return res.final_state;
  };
  const Field reference = solve(ars222(), 1600);
  const double e1 = max_diff(solve(ars111(), 50), reference);
  const double e2 = max_diff(solve(ars222(), 50), reference);
  const double e2_half = max_diff(solve(ars222(), 100), reference);
  CHECK(e2 < 0.5 * e1);
  CHECK(e2_half < 0.5 * e2);
}

TEST_CASE("density stays eps^2 close to a constant for tiny eps") {
  const double eps = 1e-6;
  const auto prob = standard_periodic(eps);
  Field f = sample_initial_condition(prob.ic, prob.make_grid(200, 1));
  StepControls ctl;
  ctl.t_final = 1.0;
  ctl = resolve_reference_density(ctl, f);
  Stepper stepper(prob.params, ars111(), options_for(2), ctl, f.grid);
  for (int s = 0; s < 10; ++s) f = stepper.imex_rk_step(f, compute_dt(f, ctl));
  double mean = 0.0;
  for (double r : f.rho) mean += r / 200.0;
  for (double r : f.rho) CHECK(std::abs(r - mean) <= 10 * eps * eps);
}

TEST_CASE("run records diagnostics and serves snapshots") {
  const auto prob = colliding_acoustic(0.1);
  const auto f0 = sample_initial_condition(prob.ic, prob.make_grid(100, 1));
  StepControls ctl;
  ctl.t_final = 0.0;
  auto res = run(f0, prob.params, ars111(), options_for(2), ctl);
  CHECK(res.series.size() == 1);
  CHECK(res.steps == 0);
  CHECK(res.final_state.rho == f0.rho);

  ctl.t_final = 0.05;
  RunSinks sinks;
  sinks.snapshot_times = {0.0, 0.02, 0.05};
  std::vector<std::pair<double, double>> served;
  int states = 0, rows = 0;
  sinks.on_snapshot = [&](double req, double actual, const Field&) { served.emplace_back(req, actual); };
  sinks.on_state = [&](double, const Field&) { ++states; };
  sinks.on_diagnostics = [&](const DiagnosticsRow&) { ++rows; };
  res = run(f0, prob.params, ars111(), options_for(2), ctl, sinks);
  REQUIRE(served.size() == 3);
  for (const auto& [req, actual] : served) CHECK(actual <= req + 1e-14);
  CHECK(served[2].second == 0.05);
  CHECK(res.series.back().t == 0.05);
  CHECK(rows == static_cast<int>(res.series.size()));
  CHECK(states == res.steps + 1);
  for (std::size_t i = 1; i < res.series.size(); ++i) CHECK(res.series[i].t > res.series[i - 1].t);
  for (const auto& r : res.series) CHECK(r.entropy == doctest::Approx(r.ke + r.pe).epsilon(1e-12));
}

TEST_CASE("Riemann problem with type 1 at eps 0.8 blows up") {
  const auto prob = riemann(0.8);
  const auto f0 = sample_initial_condition(prob.ic, prob.make_grid(200, 1));
  StepControls ctl;
  ctl.cfl = 0.2;
  ctl.t_final = 0.05;
  try {
    run(f0, prob.params, ars111(), options_for(1), ctl);
    FAIL("expected a blow-up");
  } catch (const BlowUpError& e) {
    CHECK(e.step() > 0);
    CHECK(e.time() > 0.0);
    for (double r : e.last_valid().rho) CHECK(r > 0.0);
  }
}

TEST_CASE("an overflowing stage is reported as a blow-up") {
  const auto prob = riemann(0.8);
  const auto f0 = sample_initial_condition(prob.ic, prob.make_grid(200, 1));
  StepControls ctl;
  ctl.cfl = 0.8;
  ctl.t_final = 0.05;
  CHECK_THROWS_AS(run(f0, prob.params, ars111(), options_for(3, 1.0, 2), ctl), BlowUpError);
}

TEST_CASE("invalid stepper configurations") {
  const auto g = PeriodicGrid::line(8, 0.0, 1.0);
  StepControls ctl;
  ctl.rho0 = 1.0;
  auto broken = ars222();
  broken.b_imp = {0.0, 1.0, 0.0};
  CHECK_THROWS_AS(Stepper({1.0, 2.0, 0.1}, broken, options_for(2), ctl, g), ConfigError);
  CHECK_THROWS(Stepper({1.0, 2.0, 0.1}, ars111(), options_for(2), StepControls{}, g));
  CHECK_THROWS(Stepper({1.0, 2.0, -0.1}, ars111(), options_for(2), ctl, g));
}
