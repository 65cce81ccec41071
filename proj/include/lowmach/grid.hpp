#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "lowmach/model.hpp"

namespace lowmach {

/// Uniform periodic Cartesian mesh in one or two dimensions. Cells are stored
/// row-major with the x1 index running fastest.
class PeriodicGrid {
 public:
  static PeriodicGrid line(int n, double lo, double hi);
  static PeriodicGrid rectangle(int nx, int ny, std::array<double, 2> lo, std::array<double, 2> hi);

  int dim() const { return dim_; }
  int n(int dir) const { return n_[dir]; }
  double lo(int dir) const { return lo_[dir]; }
  double hi(int dir) const { return hi_[dir]; }
  double dx(int dir) const { return dx_[dir]; }
  double min_dx() const;
  int cells() const { return dim_ == 1 ? n_[0] : n_[0] * n_[1]; }

  /// |K|
  double cell_measure() const { return dim_ == 1 ? dx_[0] : dx_[0] * dx_[1]; }
  /// |sigma| of a face normal to `dir`.
  double face_measure(int dir) const { return dim_ == 1 ? 1.0 : dx_[1 - dir]; }
  /// Distance between the two cell centres across a face normal to `dir`.
  double d_sigma(int dir) const { return dx_[dir]; }

  int index(int i, int j = 0) const { return i + n_[0] * j; }
  std::array<int, 2> coords(int cell) const { return {cell % n_[0], cell / n_[0]}; }
  /// Cell reached by moving `offset` cells along `dir`, wrapping periodically.
  int neighbor(int cell, int dir, int offset) const;
  double center(int cell, int dir) const;

  bool operator==(const PeriodicGrid&) const = default;

 private:
  PeriodicGrid() = default;
  int dim_ = 1;
  std::array<int, 2> n_{1, 1};
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> hi_{1.0, 1.0};
  std::array<double, 2> dx_{1.0, 1.0};
};

/// Visits every face once as (dir, K, L) with the normal pointing from K to L.
template <class Visitor>
void for_each_face(const PeriodicGrid& grid, Visitor&& visit) {
  for (int dir = 0; dir < grid.dim(); ++dir)
    for (int k = 0; k < grid.cells(); ++k) visit(dir, k, grid.neighbor(k, dir, 1));
}

/// Piecewise-constant density and momentum on a grid (structure of arrays).
struct Field {
  explicit Field(PeriodicGrid g);

  PeriodicGrid grid;
  std::vector<double> rho;
  std::array<std::vector<double>, 2> mom;

  int dim() const { return grid.dim(); }
  int cells() const { return grid.cells(); }
  double velocity(int cell, int k) const { return mom[k][cell] / rho[cell]; }
  CellState cell(int c) const;
  void set_cell(int c, const CellState& s);
  std::vector<CellState> states() const;
};

double face_average(double phi_k, double phi_l);
/// phi_L - phi_K, oriented along the normal from K into L.
double face_jump(double phi_k, double phi_l);

/// Sum over cells of |K| * value.
double integrate(std::span<const double> values, const PeriodicGrid& grid);

double max_wave_speed(const Field& field);

/// Pointwise initial data, evaluated at (x1, x2); x2 is 0 in 1D.
using InitialCondition = std::function<CellState(double, double)>;

/// Samples `ic` at cell centres. Throws DomainError on non-positive density.
Field sample_initial_condition(const InitialCondition& ic, const PeriodicGrid& grid);

}  // namespace lowmach
