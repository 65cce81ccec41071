#include "lowmach/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "lowmach/errors.hpp"

namespace lowmach {

void StepControls::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("CFL number must lie in (0, 1]");
  if (!(t_final >= 0.0)) throw ConfigError("final time must be non-negative");
  if (dt_cap && !(*dt_cap > 0.0)) throw ConfigError("dt cap must be positive");
  if (rho0 && !(*rho0 > 0.0)) throw ConfigError("reference density must be positive");
}

double compute_dt(const Field& field, const StepControls& controls, double t) {
  const double speed = max_wave_speed(field);
  double dt;
  if (speed > 0.0) {
    dt = controls.cfl * field.grid.min_dx() / speed;
    if (controls.dt_cap) dt = std::min(dt, *controls.dt_cap);
  } else if (controls.dt_cap) {
    dt = *controls.dt_cap;
  } else {
    throw DomainError("zero wave speed everywhere; set a dt cap to fix the step size");
  }
  const double remaining = controls.t_final - t;
  // Clip to t_final, absorbing rounding slivers from accumulated times.
  if (dt >= remaining || remaining - dt <= 1e-9 * dt) dt = remaining;
  return dt;
}

std::vector<double> linearised_pressure(std::span<const double> rho, const StepControls& controls,
                                        const ModelParams& params) {
  if (!controls.rho0) throw ConfigError("linearised pressure needs a reference density");
  const double rho0 = *controls.rho0;
  const double p0 = pressure(rho0, params);
  const double dp = pressure_derivative(rho0, params);
  std::vector<double> out(rho.size());
  for (std::size_t c = 0; c < rho.size(); ++c) out[c] = p0 + (rho[c] - rho0) * dp;
  return out;
}

StepControls resolve_reference_density(StepControls controls, const Field& initial) {
  if (!controls.rho0)
    controls.rho0 = integrate(initial.rho, initial.grid) /
                    (initial.grid.cell_measure() * initial.grid.cells());
  return controls;
}

void check_admissible(const Field& next, const Field& previous, double t, long step) {
  for (int c = 0; c < next.cells(); ++c) {
    bool ok = std::isfinite(next.rho[c]) && next.rho[c] > 0.0;
    for (int k = 0; k < next.dim() && ok; ++k) ok = std::isfinite(next.mom[k][c]);
    if (!ok) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "blow-up at step " << step << " (t = " << t << "): cell " << c << " has rho = "
          << next.rho[c];
      throw BlowUpError(msg.str(), previous, t, step);
    }
  }
}

namespace {

// Time and step are unknown inside a step; run() fills them in on rethrow.
void check_stage_density(std::span<const double> rho, const Field& previous, int stage) {
  for (std::size_t c = 0; c < rho.size(); ++c) {
    if (!(std::isfinite(rho[c]) && rho[c] > 0.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "stage " << stage << ": cell " << c << " has rho = " << rho[c];
      throw BlowUpError(msg.str(), previous, std::nan(""), -1);
    }
  }
}

// A stage whose explicit data overflowed has already blown up; the elliptic
// solve would only report it as a solver failure.
void check_stage_rhs(std::span<const double> rhs, const Field& previous, int stage) {
  for (std::size_t c = 0; c < rhs.size(); ++c) {
    if (!std::isfinite(rhs[c])) {
      std::ostringstream msg;
      msg << "stage " << stage << ": density right-hand side is non-finite in cell " << c;
      throw BlowUpError(msg.str(), previous, std::nan(""), -1);
    }
  }
}

}  // namespace

/// Stage data, written once and read-only afterwards.
struct Stepper::Stage {
  Field state;
  std::vector<double> mass_div;   // D(rho u)
  Vectors conv_div;               // D_conv(rho u (x) u)
  std::vector<double> double_div; // D^2(rho u (x) u)
  std::vector<double> lap_p;      // Lap_h of the linearised pressure
  Vectors grad_p;                 // D_cen of the pressure used in the momentum update
};

Stepper::Stepper(const ModelParams& params, DoubleTableau tableau, const SchemeOptions& options,
                 const StepControls& controls, const PeriodicGrid& grid)
    : params_(params),
      tableau_(std::move(tableau)),
      options_(options),
      controls_(controls),
      rho0_(0.0),
      p0_prime_(0.0),
      solver_(grid, options.helmholtz_method) {
  params_.validate();
  options_.disc.validate();
  controls_.validate();
  if (!controls_.rho0) throw ConfigError("stepper needs a resolved reference density");
  if (const auto errors = validate_tableau(tableau_); !errors.empty())
    throw ConfigError("invalid tableau " + tableau_.name + ": " + errors.front());
  rho0_ = *controls_.rho0;
  p0_prime_ = pressure_derivative(rho0_, params_);
}

std::vector<double> Stepper::pressure_fluctuation(std::span<const double> rho,
                                                  bool for_momentum) const {
  // Pressure minus p(rho0); constants drop out of every difference operator.
  std::vector<double> out(rho.size());
  if (for_momentum && options_.nonlinear_pressure) {
    const double p0 = pressure(rho0_, params_);
    for (std::size_t c = 0; c < rho.size(); ++c) out[c] = pressure(rho[c], params_) - p0;
  } else {
    for (std::size_t c = 0; c < rho.size(); ++c) out[c] = (rho[c] - rho0_) * p0_prime_;
  }
  return out;
}

Stepper::Stage Stepper::make_stage(Field state, bool needed_later) const {
  Stage s{std::move(state), {}, {}, {}, {}, {}};
  if (!needed_later) return s;
  const Field& f = s.state;
  s.mass_div = mass_divergence(f, options_.disc);
  s.conv_div = convective_divergence(f, params_, options_.disc);
  s.double_div = double_divergence(f);
  s.lap_p = pressure_laplacian(pressure_fluctuation(f.rho, false), f.grid);
  s.grad_p = central_gradient(pressure_fluctuation(f.rho, true), f.grid);
  return s;
}

std::vector<double> Stepper::solve_density(std::span<const double> rhs, double alpha) {
  // Solve for rho - rho0: the operator maps constants to themselves.
  std::vector<double> shifted(rhs.begin(), rhs.end());
  for (double& v : shifted) v -= rho0_;
  std::vector<double> rho = solver_.solve(alpha, shifted, options_.helmholtz_tol);
  for (double& v : rho) v += rho0_;
  return rho;
}

Field Stepper::first_order_step(const Field& field, double dt) {
  const double eps2 = params_.eps * params_.eps;
  const int dim = field.dim();
  const std::size_t n = field.rho.size();

  const std::vector<double> div = mass_divergence(field, options_.disc);
  const std::vector<double> ddiv = double_divergence(field);
  const Vectors conv = convective_divergence(field, params_, options_.disc);

  std::vector<double> rhs(n);
  for (std::size_t c = 0; c < n; ++c) rhs[c] = field.rho[c] - dt * div[c] + dt * dt * ddiv[c];
  const double alpha = dt * dt / eps2 * p0_prime_;

  check_stage_rhs(rhs, field, 0);
  Field next(field.grid);
  next.rho = solve_density(rhs, alpha);
  const Vectors grad = central_gradient(pressure_fluctuation(next.rho, true), field.grid);
  for (int k = 0; k < dim; ++k)
    for (std::size_t c = 0; c < n; ++c)
      next.mom[k][c] = field.mom[k][c] - dt * conv[k][c] - dt / eps2 * grad[k][c];
  return next;
}

Field Stepper::imex_rk_step(const Field& field, double dt) {
  const DoubleTableau& t = tableau_;
  const int s = t.stages;
  const double eps2 = params_.eps * params_.eps;
  const int dim = field.dim();
  const std::size_t n = field.rho.size();

  // D(rho u)^n enters every implicit stage through the a_ii term.
  const std::vector<double> mass_div_n = mass_divergence(field, options_.disc);

  std::vector<Stage> stages;
  stages.reserve(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    const bool needed_later = i + 1 < s;
    if (t.trivial_stage(i)) {
      stages.push_back(make_stage(field, needed_later));
      continue;
    }
    const double aii = t.imp(i, i);

    std::vector<double> rhs(field.rho);
    for (std::size_t c = 0; c < n; ++c) rhs[c] -= dt * aii * mass_div_n[c];
    for (int j = 0; j < i; ++j) {
      const Stage& st = stages[j];
      if (const double a = t.imp(i, j); a != 0.0) {
        for (std::size_t c = 0; c < n; ++c)
          rhs[c] += -dt * a * st.mass_div[c] + dt * dt / eps2 * aii * a * st.lap_p[c];
      }
      if (const double ae = t.exp(i, j); ae != 0.0) {
        for (std::size_t c = 0; c < n; ++c) rhs[c] += dt * dt * aii * ae * st.double_div[c];
      }
    }
    const double alpha = (dt * aii) * (dt * aii) / eps2 * p0_prime_;

    check_stage_rhs(rhs, field, i);
    Field next(field.grid);
    next.rho = solve_density(rhs, alpha);
    check_stage_density(next.rho, field, i);

    const Vectors grad_i = central_gradient(pressure_fluctuation(next.rho, true), field.grid);
    for (int k = 0; k < dim; ++k) {
      std::vector<double>& m = next.mom[k];
      m = field.mom[k];
      for (int j = 0; j < i; ++j) {
        const Stage& st = stages[j];
        if (const double ae = t.exp(i, j); ae != 0.0)
          for (std::size_t c = 0; c < n; ++c) m[c] -= dt * ae * st.conv_div[k][c];
        if (const double a = t.imp(i, j); a != 0.0)
          for (std::size_t c = 0; c < n; ++c) m[c] -= dt / eps2 * a * st.grad_p[k][c];
      }
      for (std::size_t c = 0; c < n; ++c) m[c] -= dt / eps2 * aii * grad_i[k][c];
    }
    stages.push_back(make_stage(std::move(next), needed_later));
  }
  return std::move(stages.back().state);
}

Field first_order_step(const Field& field, const ModelParams& params, const StepControls& controls,
                       const SchemeOptions& options, double dt) {
  Stepper stepper(params, ars111(), options, resolve_reference_density(controls, field),
                  field.grid);
  return stepper.first_order_step(field, dt);
}

Field imex_rk_step(const Field& field, const DoubleTableau& tableau, const ModelParams& params,
                   const StepControls& controls, const SchemeOptions& options, double dt) {
  Stepper stepper(params, tableau, options, resolve_reference_density(controls, field),
                  field.grid);
  return stepper.imex_rk_step(field, dt);
}

RunResult run(const Field& initial, const ModelParams& params, const DoubleTableau& tableau,
              const SchemeOptions& options, const StepControls& controls,
              const RunSinks& sinks) {
  const StepControls resolved = resolve_reference_density(controls, initial);
  Stepper stepper(params, tableau, options, resolved, initial.grid);

  std::vector<double> snapshots = sinks.snapshot_times;
  std::sort(snapshots.begin(), snapshots.end());
  for (double ts : snapshots)
    if (ts < 0.0 || ts > resolved.t_final)
      throw ConfigError("snapshot time " + std::to_string(ts) + " outside [0, t_final]");
  std::size_t next_snapshot = 0;

  RunResult result{initial, {}, 0};
  auto record = [&](const Field& f, double time) {
    const DiagnosticsRow row = global_energies(f, params, time);
    result.series.push_back(row);
    if (sinks.on_diagnostics) sinks.on_diagnostics(row);
    if (sinks.on_state) sinks.on_state(time, f);
  };
  auto serve_snapshots_before = [&](double limit, bool inclusive, const Field& f, double time) {
    while (next_snapshot < snapshots.size() &&
           (snapshots[next_snapshot] < limit || (inclusive && snapshots[next_snapshot] <= limit))) {
      if (sinks.on_snapshot) sinks.on_snapshot(snapshots[next_snapshot], time, f);
      ++next_snapshot;
    }
  };

  Field state = initial;
  double t = 0.0;
  record(state, t);
  while (t < resolved.t_final) {
    const double dt = compute_dt(state, resolved, t);
    serve_snapshots_before(t + dt, false, state, t);
    Field next = [&] {
      try {
        return stepper.imex_rk_step(state, dt);
      } catch (const BlowUpError& e) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "blow-up at step " << result.steps + 1 << " (t = " << t << "), " << e.what();
        throw BlowUpError(msg.str(), state, t, result.steps + 1);
      }
    }();
    const double t_next = (t + dt >= resolved.t_final || resolved.t_final - (t + dt) <= 1e-12 * dt)
                              ? resolved.t_final
                              : t + dt;
    check_admissible(next, state, t_next, result.steps + 1);
    state = std::move(next);
    t = t_next;
    ++result.steps;
    record(state, t);
  }
  serve_snapshots_before(t, true, state, t);
  result.final_state = std::move(state);
  return result;
}

}  // namespace lowmach
