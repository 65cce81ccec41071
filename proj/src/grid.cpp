#include "lowmach/grid.hpp"

#include <algorithm>
#include <string>

#include "lowmach/errors.hpp"

namespace lowmach {

PeriodicGrid PeriodicGrid::line(int n, double lo, double hi) {
  if (n < 1) throw ConfigError("grid needs at least one cell");
  if (!(hi > lo)) throw ConfigError("grid interval must have positive length");
  PeriodicGrid g;
  g.dim_ = 1;
  g.n_ = {n, 1};
  g.lo_ = {lo, 0.0};
  g.hi_ = {hi, 1.0};
  g.dx_ = {(hi - lo) / n, 1.0};
  return g;
}

PeriodicGrid PeriodicGrid::rectangle(int nx, int ny, std::array<double, 2> lo,
                                     std::array<double, 2> hi) {
  if (nx < 1 || ny < 1) throw ConfigError("grid needs at least one cell per direction");
  if (!(hi[0] > lo[0]) || !(hi[1] > lo[1]))
    throw ConfigError("grid intervals must have positive length");
  PeriodicGrid g;
  g.dim_ = 2;
  g.n_ = {nx, ny};
  g.lo_ = lo;
  g.hi_ = hi;
  g.dx_ = {(hi[0] - lo[0]) / nx, (hi[1] - lo[1]) / ny};
  return g;
}

double PeriodicGrid::min_dx() const {
  return dim_ == 1 ? dx_[0] : std::min(dx_[0], dx_[1]);
}

int PeriodicGrid::neighbor(int cell, int dir, int offset) const {
  auto ij = coords(cell);
  const int m = n_[dir];
  ij[dir] = ((ij[dir] + offset) % m + m) % m;
  return index(ij[0], ij[1]);
}

double PeriodicGrid::center(int cell, int dir) const {
  if (dir >= dim_) return 0.0;
  return lo_[dir] + (coords(cell)[dir] + 0.5) * dx_[dir];
}

Field::Field(PeriodicGrid g) : grid(g) {
  const auto n = static_cast<std::size_t>(grid.cells());
  rho.assign(n, 1.0);
  mom[0].assign(n, 0.0);
  mom[1].assign(grid.dim() == 2 ? n : 0, 0.0);
}

CellState Field::cell(int c) const {
  CellState s;
  s.rho = rho[c];
  for (int k = 0; k < dim(); ++k) s.mom[k] = mom[k][c];
  return s;
}

void Field::set_cell(int c, const CellState& s) {
  rho[c] = s.rho;
  for (int k = 0; k < dim(); ++k) mom[k][c] = s.mom[k];
}

std::vector<CellState> Field::states() const {
  std::vector<CellState> out(static_cast<std::size_t>(cells()));
  for (int c = 0; c < cells(); ++c) out[c] = cell(c);
  return out;
}

double face_average(double phi_k, double phi_l) { return 0.5 * (phi_k + phi_l); }

double face_jump(double phi_k, double phi_l) { return phi_l - phi_k; }

double integrate(std::span<const double> values, const PeriodicGrid& grid) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid.cell_measure();
}

double max_wave_speed(const Field& field) {
  const auto s = field.states();
  return max_wave_speed(s, field.dim());
}

Field sample_initial_condition(const InitialCondition& ic, const PeriodicGrid& grid) {
  Field f(grid);
  for (int c = 0; c < grid.cells(); ++c) {
    const CellState s = ic(grid.center(c, 0), grid.center(c, 1));
    if (!(s.rho > 0.0))
      throw DomainError("initial condition has non-positive density " + std::to_string(s.rho) +
                        " at cell " + std::to_string(c));
    f.set_cell(c, s);
  }
  return f;
}

}  // namespace lowmach
