#pragma once

#include <array>
#include <string>
#include <string_view>

#include "lowmach/grid.hpp"
#include "lowmach/model.hpp"

namespace lowmach {

enum class ProblemId { StandardPeriodic, CollidingAcoustic, Riemann, Gresho, TravellingVortex };

/// Initial data and defaults of one benchmark. All problems are periodic.
struct ProblemSpec {
  ProblemId id{};
  std::string name;
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  /// kappa and gamma of the problem, eps as requested.
  ModelParams params;
  double default_t_final = 1.0;
  /// Background velocity subtracted by the vortex diagnostics (0 otherwise).
  double background_u1 = 0.0;
  InitialCondition ic;

  PeriodicGrid make_grid(int nx, int ny) const;
};

/// rho = 1 + eps^2 sin(2 pi x), u = 1 + eps sin(2 pi x) on [0,1); kappa=1, gamma=2.
ProblemSpec standard_periodic(double eps);
/// Non-well-prepared acoustic pulses on [-1,1); kappa=1, gamma=1.4.
ProblemSpec colliding_acoustic(double eps);
/// Four-state periodic Riemann data on [0,1); kappa=1, gamma=2.
ProblemSpec riemann(double eps);
/// Gresho vortex (R = 0.4) on the unit square advected by u1 = 0.1; gamma=1.4.
ProblemSpec gresho(double eps);
/// Travelling vortex on the unit square, background rho = 110, u1 = 0.6; gamma=1.4.
ProblemSpec travelling_vortex(double eps);

ProblemSpec problem_by_name(std::string_view name, double eps);

// Exposed for tests.
double gresho_swirl_velocity(double r);
double gresho_pressure_perturbation(double r);
double travelling_vortex_k(double q);

}  // namespace lowmach
