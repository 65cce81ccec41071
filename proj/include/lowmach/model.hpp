#pragma once

#include <array>
#include <span>

namespace lowmach {

/// Coefficients of the non-dimensional barotropic system: p = kappa * rho^gamma,
/// with the pressure gradient scaled by 1/eps^2.
struct ModelParams {
  double kappa = 1.0;
  double gamma = 2.0;
  double eps = 1.0;

  /// Throws DomainError unless kappa > 0, gamma > 1 and eps > 0.
  void validate() const;
};

/// Conserved variables of one cell. Only the first `dim` momentum entries are used.
struct CellState {
  double rho = 1.0;
  std::array<double, 2> mom{0.0, 0.0};

  double velocity(int k) const { return mom[k] / rho; }
};

struct EntropyQuantities {
  double eta = 0.0;
  std::array<double, 2> omega{0.0, 0.0};
  /// Entropy variables; v[0] is the density entry, v[1..dim] the velocity.
  std::array<double, 3> v{0.0, 0.0, 0.0};
};

double pressure(double rho, const ModelParams& params);

/// p'(rho) = kappa * gamma * rho^(gamma - 1).
double pressure_derivative(double rho, const ModelParams& params);

EntropyQuantities entropy_quantities(const CellState& state, int dim, const ModelParams& params);

/// Largest per-cell sum of |u_k|. The acoustic speed is left out on purpose:
/// acoustics are integrated implicitly and must not restrict the time step.
double max_wave_speed(std::span<const CellState> cells, int dim);

}  // namespace lowmach
