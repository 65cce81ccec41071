#include "lowmach/diagnostics.hpp"

#include <cmath>
#include <string>

#include "lowmach/errors.hpp"

namespace lowmach {

DiagnosticsRow global_energies(const Field& field, const ModelParams& params, double t) {
  const double pe_scale = 1.0 / (params.eps * params.eps * (params.gamma - 1.0));
  double ke = 0.0, pe = 0.0;
  for (int c = 0; c < field.cells(); ++c) {
    double m2 = 0.0;
    for (int k = 0; k < field.dim(); ++k) m2 += field.mom[k][c] * field.mom[k][c];
    ke += 0.5 * m2 / field.rho[c];
    pe += pressure(field.rho[c], params) * pe_scale;
  }
  const double w = field.grid.cell_measure();
  DiagnosticsRow row;
  row.t = t;
  row.ke = ke * w;
  row.pe = pe * w;
  row.entropy = row.ke + row.pe;
  return row;
}

VortexDiagnostics gresho_diagnostics(const Field& field, const ModelParams& params,
                                     double background_u1) {
  VortexDiagnostics d;
  d.mach_ratio.resize(static_cast<std::size_t>(field.cells()));
  double ke = 0.0;
  for (int c = 0; c < field.cells(); ++c) {
    const double du1 = field.velocity(c, 0) - background_u1;
    const double u2 = field.dim() == 2 ? field.velocity(c, 1) : 0.0;
    const double speed2 = du1 * du1 + u2 * u2;
    ke += 0.5 * speed2;
    const double sound2 = params.gamma * pressure(field.rho[c], params) / field.rho[c];
    d.mach_ratio[c] = std::sqrt(speed2 / sound2);
  }
  d.perturbation_ke = ke * field.grid.cell_measure();
  return d;
}

std::vector<double> restrict_to(std::span<const double> values, const PeriodicGrid& fine,
                                const PeriodicGrid& coarse) {
  if (fine.dim() != coarse.dim()) throw ConfigError("grids differ in dimension");
  std::array<int, 2> ratio{1, 1};
  for (int dir = 0; dir < fine.dim(); ++dir) {
    if (fine.n(dir) % coarse.n(dir) != 0)
      throw ConfigError("reference grid (" + std::to_string(fine.n(dir)) +
                        ") is not an integer multiple of the coarse grid (" +
                        std::to_string(coarse.n(dir)) + ")");
    const double span_f = fine.hi(dir) - fine.lo(dir), span_c = coarse.hi(dir) - coarse.lo(dir);
    if (std::abs(fine.lo(dir) - coarse.lo(dir)) > 1e-12 * span_c ||
        std::abs(span_f - span_c) > 1e-12 * span_c)
      throw ConfigError("grids cover different domains");
    ratio[dir] = fine.n(dir) / coarse.n(dir);
  }
  std::vector<double> out(static_cast<std::size_t>(coarse.cells()), 0.0);
  for (int c = 0; c < fine.cells(); ++c) {
    const auto ij = fine.coords(c);
    out[coarse.index(ij[0] / ratio[0], ij[1] / ratio[1])] += values[c];
  }
  const double inv = 1.0 / (ratio[0] * ratio[1]);
  for (double& v : out) v *= inv;
  return out;
}

namespace {

std::vector<double> extract(const Field& f, Variable v) {
  std::vector<double> out(static_cast<std::size_t>(f.cells()));
  for (int c = 0; c < f.cells(); ++c) {
    switch (v) {
      case Variable::Rho:
        out[c] = f.rho[c];
        break;
      case Variable::U1:
        out[c] = f.velocity(c, 0);
        break;
      case Variable::U2:
        if (f.dim() < 2) throw ConfigError("u2 requested on a 1D field");
        out[c] = f.velocity(c, 1);
        break;
    }
  }
  return out;
}

}  // namespace

std::vector<double> l2_error(const Field& coarse, const Field& reference,
                             std::span<const Variable> variables) {
  std::vector<double> errors;
  for (Variable v : variables) {
    const auto ref = restrict_to(extract(reference, v), reference.grid, coarse.grid);
    const auto mine = extract(coarse, v);
    double sum = 0.0;
    for (std::size_t c = 0; c < mine.size(); ++c) sum += (mine[c] - ref[c]) * (mine[c] - ref[c]);
    errors.push_back(std::sqrt(sum * coarse.grid.cell_measure()));
  }
  return errors;
}

std::optional<double> eoc(double dx_coarse, double err_coarse, double dx_fine, double err_fine) {
  if (!(err_coarse > 0.0) || !(err_fine > 0.0)) return std::nullopt;
  return std::log(err_coarse / err_fine) / std::log(dx_coarse / dx_fine);
}

EocTable compute_eoc(std::span<const ErrorSample> samples) {
  if (samples.empty()) throw ConfigError("convergence study needs at least one sample");
  EocTable table;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    EocRow row{samples[i].n, samples[i].dx, samples[i].error, {}};
    if (i > 0) {
      const auto& prev = samples[i - 1];
      if (!(samples[i].dx < prev.dx)) throw ConfigError("grid spacings must strictly decrease");
      if (prev.error.size() != row.error.size())
        throw ConfigError("samples carry different numbers of variables");
      for (std::size_t v = 0; v < row.error.size(); ++v)
        row.eoc.push_back(eoc(prev.dx, prev.error[v], row.dx, row.error[v]));
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace lowmach
