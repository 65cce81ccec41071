#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lowmach/diagnostics.hpp"
#include "lowmach/elliptic.hpp"
#include "lowmach/grid.hpp"
#include "lowmach/imex.hpp"
#include "lowmach/model.hpp"
#include "lowmach/spatial.hpp"

namespace lowmach {

struct StepControls {
  double cfl = 0.5;
  double t_final = 1.0;
  std::optional<double> dt_cap;
  /// Reference density of the pressure linearisation. Unset means "domain
  /// mean of the initial density" and is resolved by run().
  std::optional<double> rho0;

  void validate() const;
};

struct SchemeOptions {
  DiscretisationType disc;
  /// Use p(rho^j) instead of the linearisation in the momentum pressure gradient.
  bool nonlinear_pressure = false;
  double helmholtz_tol = 1e-12;
  HelmholtzMethod helmholtz_method = HelmholtzMethod::Spectral;
};

/// Non-finite values or non-positive density after a step. Carries the last
/// admissible state so callers can dump it.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, Field last_valid, double t, long step)
      : std::runtime_error(what), last_valid_(std::move(last_valid)), t_(t), step_(step) {}
  const Field& last_valid() const { return last_valid_; }
  double time() const { return t_; }
  long step() const { return step_; }

 private:
  Field last_valid_;
  double t_;
  long step_;
};

/// C * min(dx) / max_wave_speed, capped by dt_cap and clipped so that the step
/// ends exactly on t_final.
double compute_dt(const Field& field, const StepControls& controls, double t = 0.0);

/// p(rho0) + (rho - rho0) p'(rho0) per cell.
std::vector<double> linearised_pressure(std::span<const double> rho, const StepControls& controls,
                                        const ModelParams& params);

/// Returns `controls` with rho0 filled in from the mean initial density if unset.
StepControls resolve_reference_density(StepControls controls, const Field& initial);

/// Throws BlowUpError if `next` has non-finite entries or rho <= 0.
void check_admissible(const Field& next, const Field& previous, double t, long step);

/// Advances the fully discrete scheme on one grid. Holds the Helmholtz solver
/// (and its FFT plans) so repeated steps do not re-plan.
class Stepper {
 public:
  Stepper(const ModelParams& params, DoubleTableau tableau, const SchemeOptions& options,
          const StepControls& controls, const PeriodicGrid& grid);

  /// Dedicated first-order IMEX step: one Helmholtz solve for rho, then an
  /// explicit momentum update with the implicit pressure gradient.
  Field first_order_step(const Field& field, double dt);
  /// Generic IMEX-RK stage loop; the result is the last stage (GSA).
  Field imex_rk_step(const Field& field, double dt);

  const DoubleTableau& tableau() const { return tableau_; }
  const StepControls& controls() const { return controls_; }

 private:
  struct Stage;
  Stage make_stage(Field state, bool needed_later) const;
  std::vector<double> pressure_fluctuation(std::span<const double> rho, bool for_momentum) const;
  std::vector<double> solve_density(std::span<const double> rhs, double alpha);

  ModelParams params_;
  DoubleTableau tableau_;
  SchemeOptions options_;
  StepControls controls_;
  double rho0_;
  double p0_prime_;
  HelmholtzSolver solver_;
};

Field first_order_step(const Field& field, const ModelParams& params, const StepControls& controls,
                       const SchemeOptions& options, double dt);
Field imex_rk_step(const Field& field, const DoubleTableau& tableau, const ModelParams& params,
                   const StepControls& controls, const SchemeOptions& options, double dt);

struct RunSinks {
  std::function<void(const DiagnosticsRow&)> on_diagnostics;
  /// Called with every accepted state, including the initial one.
  std::function<void(double t, const Field&)> on_state;
  /// Requested snapshot times; each is served with the latest state whose
  /// time does not exceed it.
  std::vector<double> snapshot_times;
  std::function<void(double requested_t, double actual_t, const Field&)> on_snapshot;
};

struct RunResult {
  Field final_state;
  std::vector<DiagnosticsRow> series;
  long steps = 0;
};

/// Steps from t = 0 to controls.t_final, recording (t, entropy, KE, PE) after
/// every step. Propagates BlowUpError.
RunResult run(const Field& initial, const ModelParams& params, const DoubleTableau& tableau,
              const SchemeOptions& options, const StepControls& controls,
              const RunSinks& sinks = {});

}  // namespace lowmach
