#include "lowmach/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowmach/errors.hpp"

namespace lowmach {

void DiscretisationType::validate() const {
  if (kind != SpaceKind::Type1 && kind != SpaceKind::Type2 && kind != SpaceKind::Type3)
    throw ConfigError("discretisation type must be 1, 2 or 3");
  if (!(q >= 0.0)) throw ConfigError("dissipation strength q must be non-negative");
  if (order != 1 && order != 2) throw ConfigError("entropy stable order must be 1 or 2");
}

namespace {

double positive_part(double a) { return 0.5 * (a + std::abs(a)); }
double negative_part(double a) { return 0.5 * (a - std::abs(a)); }

Vectors zero_vectors(const PeriodicGrid& grid) {
  Vectors out;
  for (int k = 0; k < grid.dim(); ++k) out[k].assign(static_cast<std::size_t>(grid.cells()), 0.0);
  return out;
}

/// Weight |sigma| / |K| applied to a face flux before it is added to K and removed from L.
struct FaceScatter {
  const PeriodicGrid& grid;
  double weight(int dir) const { return grid.face_measure(dir) / grid.cell_measure(); }
};

double mean_normal_velocity(const Field& f, int dir, int k, int l) {
  return face_average(f.velocity(k, dir), f.velocity(l, dir));
}

}  // namespace

Scalars upwind_mass_divergence(const Field& field) {
  const FaceScatter s{field.grid};
  Scalars out(static_cast<std::size_t>(field.cells()), 0.0);
  for_each_face(field.grid, [&](int dir, int k, int l) {
    const double un = mean_normal_velocity(field, dir, k, l);
    const double flux =
        s.weight(dir) * (field.rho[k] * positive_part(un) + field.rho[l] * negative_part(un));
    out[k] += flux;
    out[l] -= flux;
  });
  return out;
}

Scalars central_mass_divergence(const Field& field) {
  Scalars out(static_cast<std::size_t>(field.cells()), 0.0);
  for (int dir = 0; dir < field.dim(); ++dir) {
    const Scalars part = central_divergence(field.mom[dir], field.grid, dir);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += part[c];
  }
  return out;
}

Vectors upwind_convective_divergence(const Field& field) {
  const FaceScatter s{field.grid};
  Vectors out = zero_vectors(field.grid);
  for_each_face(field.grid, [&](int dir, int k, int l) {
    const double un = mean_normal_velocity(field, dir, k, l);
    const double up = positive_part(un), dn = negative_part(un);
    for (int j = 0; j < field.dim(); ++j) {
      const double flux = s.weight(dir) * (field.mom[j][k] * up + field.mom[j][l] * dn);
      out[j][k] += flux;
      out[j][l] -= flux;
    }
  });
  return out;
}

Scalars central_divergence(std::span<const double> values, const PeriodicGrid& grid, int dir) {
  const double w = grid.face_measure(dir) / grid.cell_measure();
  Scalars out(static_cast<std::size_t>(grid.cells()), 0.0);
  for (int k = 0; k < grid.cells(); ++k) {
    const int l = grid.neighbor(k, dir, 1);
    const double flux = w * face_average(values[k], values[l]);
    out[k] += flux;
    out[l] -= flux;
  }
  return out;
}

Vectors central_gradient(std::span<const double> values, const PeriodicGrid& grid) {
  Vectors out;
  for (int dir = 0; dir < grid.dim(); ++dir) out[dir] = central_divergence(values, grid, dir);
  return out;
}

Vectors central_pressure_gradient(const Field& field, const ModelParams& params) {
  Scalars p(field.rho.size());
  for (std::size_t c = 0; c < p.size(); ++c) p[c] = pressure(field.rho[c], params);
  return central_gradient(p, field.grid);
}

Scalars pressure_laplacian(std::span<const double> p, const PeriodicGrid& grid) {
  Scalars out(static_cast<std::size_t>(grid.cells()), 0.0);
  for_each_face(grid, [&](int dir, int k, int l) {
    const double flux = grid.face_measure(dir) / grid.cell_measure() *
                        face_jump(p[k], p[l]) / grid.d_sigma(dir);
    out[k] += flux;
    out[l] -= flux;
  });
  return out;
}

Scalars double_divergence(const Field& field) {
  const PeriodicGrid& g = field.grid;
  const int dim = field.dim();
  const auto n = static_cast<std::size_t>(field.cells());
  Scalars out(n, 0.0);
  Scalars tensor(n);
  for (int a = 0; a < dim; ++a) {
    // Row a of D_cen(rho u (x) u), i.e. sum_b d_b(rho u_a u_b).
    Scalars row(n, 0.0);
    for (int b = 0; b < dim; ++b) {
      for (std::size_t c = 0; c < n; ++c) tensor[c] = field.mom[a][c] * field.mom[b][c] / field.rho[c];
      const Scalars part = central_divergence(tensor, g, b);
      for (std::size_t c = 0; c < n; ++c) row[c] += part[c];
    }
    const Scalars outer = central_divergence(row, g, a);
    for (std::size_t c = 0; c < n; ++c) out[c] += outer[c];
  }
  return out;
}

double rho_gamma_mean(double rho_k, double rho_l, double gamma) {
  // Evaluate from the smaller state so the result does not depend on the face orientation.
  const double lo = std::min(rho_k, rho_l), hi = std::max(rho_k, rho_l);
  const double jump = std::pow(hi, gamma - 1.0) - std::pow(lo, gamma - 1.0);
  if (std::abs(jump) < 1e-12 * std::max(1.0, std::pow(lo, gamma - 1.0))) return face_average(lo, hi);
  // Same ratio written as lo expm1(g L) / expm1((g-1) L) with L = log(hi/lo);
  // this avoids the cancellation in both jumps when the states are close.
  const double log_ratio = std::log1p((hi - lo) / lo);
  return (gamma - 1.0) / gamma * lo * std::expm1(gamma * log_ratio) /
         std::expm1((gamma - 1.0) * log_ratio);
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return a > 0.0 ? std::min(a, b) : std::max(a, b);
}

double minmod_reconstructed_jump(double u_kk, double u_k, double u_l, double u_ll) {
  const double rec_k = u_k + 0.5 * minmod(u_k - u_kk, u_l - u_k);
  const double rec_l = u_l - 0.5 * minmod(u_l - u_k, u_ll - u_l);
  return rec_l - rec_k;
}

namespace {

Vectors ec_es_divergence(const Field& field, const ModelParams& params, double q, int order) {
  const FaceScatter s{field.grid};
  const PeriodicGrid& g = field.grid;
  const int dim = field.dim();
  Vectors out = zero_vectors(g);
  for_each_face(g, [&](int dir, int k, int l) {
    const double mean_rho = rho_gamma_mean(field.rho[k], field.rho[l], params.gamma);
    const double un = mean_normal_velocity(field, dir, k, l);
    const int kk = order == 2 ? g.neighbor(k, dir, -1) : k;
    const int ll = order == 2 ? g.neighbor(l, dir, 1) : l;
    for (int j = 0; j < dim; ++j) {
      double flux = mean_rho * un * face_average(field.velocity(k, j), field.velocity(l, j));
      if (q > 0.0) {
        const double du = order == 2
                              ? minmod_reconstructed_jump(field.velocity(kk, j), field.velocity(k, j),
                                                          field.velocity(l, j), field.velocity(ll, j))
                              : face_jump(field.velocity(k, j), field.velocity(l, j));
        flux -= 0.5 * q * std::abs(un) * du;
      }
      flux *= s.weight(dir);
      out[j][k] += flux;
      out[j][l] -= flux;
    }
  });
  return out;
}

}  // namespace

Vectors ec_convective_divergence(const Field& field, const ModelParams& params) {
  return ec_es_divergence(field, params, 0.0, 1);
}

Vectors es_convective_divergence(const Field& field, const ModelParams& params,
                                 const DiscretisationType& disc) {
  if (disc.kind != SpaceKind::Type3)
    throw ConfigError("entropy stable convection requires discretisation type 3");
  return ec_es_divergence(field, params, disc.q, disc.order);
}

std::array<double, 3> entropy_conservative_flux(const CellState& k, const CellState& l, int dir,
                                                int dim, const ModelParams& params) {
  const double eps2 = params.eps * params.eps;
  const double mean_rho = rho_gamma_mean(k.rho, l.rho, params.gamma);
  const double un = face_average(k.velocity(dir), l.velocity(dir));
  const double mean_p = face_average(pressure(k.rho, params), pressure(l.rho, params));
  std::array<double, 3> g{mean_rho * un, 0.0, 0.0};
  for (int j = 0; j < dim; ++j) {
    g[j + 1] = mean_rho * un * face_average(k.velocity(j), l.velocity(j));
    if (j == dir) g[j + 1] += mean_p / eps2;
  }
  return g;
}

std::array<double, 3> physical_flux(const CellState& s, int dir, int dim,
                                    const ModelParams& params) {
  const double un = s.velocity(dir);
  std::array<double, 3> g{s.rho * un, 0.0, 0.0};
  for (int j = 0; j < dim; ++j) {
    g[j + 1] = s.mom[j] * un;
    if (j == dir) g[j + 1] += pressure(s.rho, params) / (params.eps * params.eps);
  }
  return g;
}

Scalars mass_divergence(const Field& field, const DiscretisationType& disc) {
  return disc.kind == SpaceKind::Type2 ? upwind_mass_divergence(field)
                                       : central_mass_divergence(field);
}

Vectors convective_divergence(const Field& field, const ModelParams& params,
                              const DiscretisationType& disc) {
  if (disc.kind == SpaceKind::Type3) return es_convective_divergence(field, params, disc);
  return upwind_convective_divergence(field);
}

}  // namespace lowmach
