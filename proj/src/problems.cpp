#include "lowmach/problems.hpp"

#include <cmath>
#include <numbers>

#include "lowmach/errors.hpp"

namespace lowmach {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGreshoRadius = 0.4;
constexpr double kGreshoU1 = 0.1;

ModelParams make_params(double kappa, double gamma, double eps) {
  ModelParams p{kappa, gamma, eps};
  p.validate();
  return p;
}

CellState from_velocity(double rho, double u1, double u2 = 0.0) {
  CellState s;
  s.rho = rho;
  s.mom = {rho * u1, rho * u2};
  return s;
}

}  // namespace

PeriodicGrid ProblemSpec::make_grid(int nx, int ny) const {
  if (dim == 1) return PeriodicGrid::line(nx, lo[0], hi[0]);
  return PeriodicGrid::rectangle(nx, ny, lo, hi);
}

ProblemSpec standard_periodic(double eps) {
  ProblemSpec s;
  s.id = ProblemId::StandardPeriodic;
  s.name = "standard_periodic";
  s.dim = 1;
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 1.0};
  s.params = make_params(1.0, 2.0, eps);
  s.default_t_final = 5.0;
  s.ic = [eps](double x, double) {
    const double w = std::sin(2.0 * kPi * x);
    return from_velocity(1.0 + eps * eps * w, 1.0 + eps * w);
  };
  return s;
}

ProblemSpec colliding_acoustic(double eps) {
  ProblemSpec s;
  s.id = ProblemId::CollidingAcoustic;
  s.name = "colliding_acoustic";
  s.dim = 1;
  s.lo = {-1.0, 0.0};
  s.hi = {1.0, 1.0};
  s.params = make_params(1.0, 1.4, eps);
  s.default_t_final = 0.08;
  const double gamma = s.params.gamma;
  s.ic = [eps, gamma](double x, double) {
    const double bump = 1.0 - std::cos(2.0 * kPi * x);
    const double sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    return from_velocity(0.955 + 0.5 * eps * bump, -sign * std::sqrt(gamma) * bump);
  };
  return s;
}

ProblemSpec riemann(double eps) {
  ProblemSpec s;
  s.id = ProblemId::Riemann;
  s.name = "riemann";
  s.dim = 1;
  s.params = make_params(1.0, 2.0, eps);
  s.default_t_final = 0.05;
  const double e2 = eps * eps;
  // Intervals closed on the right, as in the original problem statement.
  s.ic = [e2](double x, double) {
    CellState c;
    if (x > 0.2 && x <= 0.3) {
      c.rho = 1.0 + e2;
      c.mom[0] = 1.0;
    } else if (x > 0.3 && x <= 0.7) {
      c.rho = 1.0;
      c.mom[0] = 1.0 + 0.5 * e2;
    } else if (x > 0.7 && x <= 0.8) {
      c.rho = 1.0 - e2;
      c.mom[0] = 1.0;
    } else {
      c.rho = 1.0;
      c.mom[0] = 1.0 - 0.5 * e2;
    }
    return c;
  };
  return s;
}

double gresho_swirl_velocity(double r) {
  const double R = kGreshoRadius;
  if (r < 0.5 * R) return 2.0 * r / R;
  if (r < R) return 2.0 * (1.0 - r / R);
  return 0.0;
}

double gresho_pressure_perturbation(double r) {
  const double R = kGreshoRadius;
  const double s = r / R;
  if (r < 0.5 * R) return 2.0 * s * s + 2.0 - std::log(16.0);
  if (r < R) return 2.0 * s * s - 8.0 * s + 4.0 * std::log(s) + 6.0;
  return 0.0;
}

ProblemSpec gresho(double eps) {
  ProblemSpec s;
  s.id = ProblemId::Gresho;
  s.name = "gresho";
  s.dim = 2;
  s.params = make_params(1.0, 1.4, eps);
  s.default_t_final = kGreshoRadius * kPi;
  s.background_u1 = kGreshoU1;
  const double gamma = s.params.gamma;
  s.ic = [eps, gamma](double x1, double x2) {
    const double dx1 = x1 - 0.5, dx2 = x2 - 0.5;
    const double r = std::hypot(dx1, dx2);
    // u_theta / r is 2/R on the inner core, which removes the r = 0 singularity.
    const double swirl_over_r =
        r < 0.5 * kGreshoRadius ? 2.0 / kGreshoRadius : gresho_swirl_velocity(r) / r;
    const double rho = 1.0 + eps * eps * gresho_pressure_perturbation(r) / gamma;
    return from_velocity(rho, kGreshoU1 - dx2 * swirl_over_r, dx1 * swirl_over_r);
  };
  return s;
}

double travelling_vortex_k(double q) {
  return 2.0 * std::cos(q) + 2.0 * q * std::sin(q) + 0.125 * std::cos(2.0 * q) +
         0.25 * q * std::sin(2.0 * q) + 0.75 * q * q;
}

ProblemSpec travelling_vortex(double eps) {
  ProblemSpec s;
  s.id = ProblemId::TravellingVortex;
  s.name = "travelling_vortex";
  s.dim = 2;
  s.params = make_params(1.0, 1.4, eps);
  s.default_t_final = 1.0 / 0.6;
  s.ic = [eps](double x1, double x2) {
    const double r = 4.0 * kPi * std::hypot(x1 - 0.5, x2 - 0.5);
    if (!(r < kPi)) return from_velocity(110.0, 0.6, 0.0);
    const double amp = 1.5 / (4.0 * kPi);
    const double rho = 110.0 + eps * eps * amp * amp * (travelling_vortex_k(r) - travelling_vortex_k(kPi));
    const double swirl = 1.5 * (1.0 + std::cos(r));
    return from_velocity(rho, 0.6 + swirl * (0.5 - x2), swirl * (x1 - 0.5));
  };
  return s;
}

ProblemSpec problem_by_name(std::string_view name, double eps) {
  if (name == "standard_periodic") return standard_periodic(eps);
  if (name == "colliding_acoustic") return colliding_acoustic(eps);
  if (name == "riemann") return riemann(eps);
  if (name == "gresho") return gresho(eps);
  if (name == "travelling_vortex") return travelling_vortex(eps);
  throw ConfigError("unknown problem '" + std::string(name) + "'");
}

}  // namespace lowmach
