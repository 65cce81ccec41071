#include "lowmach/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowmach/errors.hpp"

namespace lowmach {

void ModelParams::validate() const {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive, got " + std::to_string(kappa));
  if (!(gamma > 1.0)) throw DomainError("gamma must exceed 1, got " + std::to_string(gamma));
  if (!(eps > 0.0)) throw DomainError("eps must be positive, got " + std::to_string(eps));
}

namespace {
void require_positive_density(double rho) {
  if (!(rho > 0.0)) throw DomainError("density must be positive, got " + std::to_string(rho));
}
}  // namespace

double pressure(double rho, const ModelParams& params) {
  require_positive_density(rho);
  return params.kappa * std::pow(rho, params.gamma);
}

double pressure_derivative(double rho, const ModelParams& params) {
  require_positive_density(rho);
  return params.kappa * params.gamma * std::pow(rho, params.gamma - 1.0);
}

EntropyQuantities entropy_quantities(const CellState& state, int dim, const ModelParams& params) {
  require_positive_density(state.rho);
  const double eps2 = params.eps * params.eps;
  const double p = pressure(state.rho, params);

  double u2 = 0.0;
  for (int k = 0; k < dim; ++k) u2 += state.velocity(k) * state.velocity(k);

  EntropyQuantities q;
  q.eta = 0.5 * state.rho * u2 + p / (eps2 * (params.gamma - 1.0));
  for (int k = 0; k < dim; ++k) q.omega[k] = state.velocity(k) * (q.eta + p / eps2);
  q.v[0] = -0.5 * u2 + params.kappa * params.gamma / (params.gamma - 1.0) *
                           std::pow(state.rho, params.gamma - 1.0) / eps2;
  for (int k = 0; k < dim; ++k) q.v[k + 1] = state.velocity(k);
  return q;
}

double max_wave_speed(std::span<const CellState> cells, int dim) {
  if (cells.empty()) throw DomainError("max_wave_speed of an empty field");
  double s = 0.0;
  for (const auto& c : cells) {
    require_positive_density(c.rho);
    double local = 0.0;
    for (int k = 0; k < dim; ++k) local += std::abs(c.velocity(k));
    s = std::max(s, local);
  }
  return s;
}

}  // namespace lowmach
