#pragma once

#include <array>
#include <span>
#include <vector>

#include "lowmach/grid.hpp"
#include "lowmach/model.hpp"

namespace lowmach {

using Scalars = std::vector<double>;
/// Per-cell vectors stored by component; the second component is empty in 1D.
using Vectors = std::array<std::vector<double>, 2>;

enum class SpaceKind { Type1 = 1, Type2 = 2, Type3 = 3 };

/// Selects the space operators:
///   Type1: central mass flux, upwind convection
///   Type2: upwind mass flux,  upwind convection
///   Type3: central mass flux, entropy conservative/stable convection
/// `order` and `q` only matter for Type3.
struct DiscretisationType {
  SpaceKind kind = SpaceKind::Type2;
  int order = 1;
  double q = 0.0;

  void validate() const;
};

// All face-sum operators below are normalised by 1/|K|, so each one
// approximates the corresponding differential quantity per unit volume.

Scalars upwind_mass_divergence(const Field& field);
Scalars central_mass_divergence(const Field& field);
Vectors upwind_convective_divergence(const Field& field);

/// Central gradient of p(rho). The 1/eps^2 factor is the caller's business.
Vectors central_pressure_gradient(const Field& field, const ModelParams& params);
/// Central gradient of an arbitrary per-cell scalar.
Vectors central_gradient(std::span<const double> values, const PeriodicGrid& grid);
/// Central divergence of one scalar flux component along `dir`.
Scalars central_divergence(std::span<const double> values, const PeriodicGrid& grid, int dir);

/// Compact 3-point (1D) / 5-point (2D) periodic Laplacian.
Scalars pressure_laplacian(std::span<const double> p, const PeriodicGrid& grid);

/// D_cen D_cen applied to the tensor rho u (x) u; wide stencil.
Scalars double_divergence(const Field& field);

/// ((g-1)/g) [[rho^g]] / [[rho^(g-1)]], falling back to the arithmetic mean when
/// the denominator jump drops below 1e-12 max(1, rho_min^(g-1)). Symmetric in its arguments.
double rho_gamma_mean(double rho_k, double rho_l, double gamma);

Vectors ec_convective_divergence(const Field& field, const ModelParams& params);
Vectors es_convective_divergence(const Field& field, const ModelParams& params,
                                 const DiscretisationType& disc);

/// Jump of the min-mod limited linear reconstructions at the face between
/// u_k and u_l, from the four cells u_kk, u_k | u_l, u_ll.
double minmod_reconstructed_jump(double u_kk, double u_k, double u_l, double u_ll);
double minmod(double a, double b);

/// Full entropy conservative interface flux in direction `dir` (mass entry
/// followed by `dim` momentum entries). Used to check the Tadmor condition.
std::array<double, 3> entropy_conservative_flux(const CellState& k, const CellState& l, int dir,
                                                int dim, const ModelParams& params);

/// Physical flux G^dir(U).
std::array<double, 3> physical_flux(const CellState& s, int dir, int dim,
                                    const ModelParams& params);

/// Dispatchers used by the time stepper.
Scalars mass_divergence(const Field& field, const DiscretisationType& disc);
Vectors convective_divergence(const Field& field, const ModelParams& params,
                              const DiscretisationType& disc);

}  // namespace lowmach
