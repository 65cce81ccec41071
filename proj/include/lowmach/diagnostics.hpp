#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lowmach/grid.hpp"
#include "lowmach/model.hpp"

namespace lowmach {

/// Global entropy split into kinetic and potential parts at time t.
struct DiagnosticsRow {
  double t = 0.0;
  double entropy = 0.0;
  double ke = 0.0;
  double pe = 0.0;
};

/// KE = sum |K| rho |u|^2 / 2, PE = sum |K| p / (eps^2 (gamma - 1)), entropy = KE + PE.
DiagnosticsRow global_energies(const Field& field, const ModelParams& params, double t = 0.0);

/// Vortex diagnostics measured relative to a background flow (u1_bg, 0).
struct VortexDiagnostics {
  /// sum |K| ((u1 - u1_bg)^2 + u2^2) / 2, without a density weight.
  double perturbation_ke = 0.0;
  /// |u - u_bg| / sqrt(gamma p / rho) per cell.
  std::vector<double> mach_ratio;
};

VortexDiagnostics gresho_diagnostics(const Field& field, const ModelParams& params,
                                     double background_u1);

enum class Variable { Rho, U1, U2 };

/// Discrete L2 distance sqrt(sum |K| (phi - phi_ref)^2) per requested
/// variable, after block-averaging the reference onto the coarse grid.
/// Throws ConfigError unless the grids are nested over the same domain.
std::vector<double> l2_error(const Field& coarse, const Field& reference,
                             std::span<const Variable> variables);

/// Block average of a per-cell quantity from `fine` onto `coarse`.
std::vector<double> restrict_to(std::span<const double> values, const PeriodicGrid& fine,
                                const PeriodicGrid& coarse);

struct EocRow {
  int n = 0;
  double dx = 0.0;
  std::vector<double> error;
  /// Empty on the first row, or when an error is zero.
  std::vector<std::optional<double>> eoc;
};

using EocTable = std::vector<EocRow>;

/// One (dx, errors) sample of a convergence study.
struct ErrorSample {
  int n = 0;
  double dx = 0.0;
  std::vector<double> error;
};

/// eoc_i = ln(e_{i-1} / e_i) / ln(dx_{i-1} / dx_i). Needs dx strictly decreasing.
EocTable compute_eoc(std::span<const ErrorSample> samples);
std::optional<double> eoc(double dx_coarse, double err_coarse, double dx_fine, double err_fine);

}  // namespace lowmach
