#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lowmach/grid.hpp"

namespace lowmach {

/// I - alpha * Lap_h on a periodic grid, Lap_h being the compact pressure
/// Laplacian. For alpha >= 0 every eigenvalue is >= 1 and the constant mode
/// is mapped to itself.
struct HelmholtzOperator {
  PeriodicGrid grid;
  double alpha = 0.0;

  std::vector<double> apply(std::span<const double> x) const;
  /// Max absolute row sum of the assembled matrix.
  double norm_inf() const;
};

enum class HelmholtzMethod {
  Spectral,           ///< diagonalisation by discrete Fourier transform (default)
  CyclicTridiagonal,  ///< Thomas + Sherman-Morrison, 1D only
  ConjugateGradient,
};

/// Normwise backward error ||A x - b|| / (||A||_inf ||x|| + ||b||).
double helmholtz_backward_error(const HelmholtzOperator& op, std::span<const double> x,
                                std::span<const double> b);

/// Reusable solver for one grid. FFT plans are created once; the instance is
/// not safe for concurrent use, separate instances are.
class HelmholtzSolver {
 public:
  explicit HelmholtzSolver(const PeriodicGrid& grid, HelmholtzMethod method = HelmholtzMethod::Spectral);
  ~HelmholtzSolver();
  HelmholtzSolver(HelmholtzSolver&&) noexcept;
  HelmholtzSolver& operator=(HelmholtzSolver&&) noexcept;
  HelmholtzSolver(const HelmholtzSolver&) = delete;
  HelmholtzSolver& operator=(const HelmholtzSolver&) = delete;

  /// Solves (I - alpha Lap_h) x = b. On return the backward error is <= tol;
  /// a direct result that misses it is refined by conjugate gradients, and a
  /// SolverError carrying the residual is thrown if that fails too.
  std::vector<double> solve(double alpha, std::span<const double> b, double tol = 1e-12);

  const PeriodicGrid& grid() const { return grid_; }
  HelmholtzMethod method() const { return method_; }

 private:
  struct FftPlans;
  std::vector<double> solve_spectral(double alpha, std::span<const double> b);

  PeriodicGrid grid_;
  HelmholtzMethod method_;
  std::unique_ptr<FftPlans> fft_;
};

std::vector<double> solve_helmholtz(const HelmholtzOperator& op, std::span<const double> b,
                                    double tol = 1e-12,
                                    HelmholtzMethod method = HelmholtzMethod::Spectral);

/// Cyclic tridiagonal solve of a periodic system with constant diagonal `diag`
/// and constant off-diagonal `off` (including the two corner entries). n >= 3.
std::vector<double> solve_cyclic_tridiagonal(double diag, double off, std::span<const double> b);

/// Conjugate gradients on the operator, starting from x0. Stops once the
/// backward error drops to tol; throws SolverError after max_iter iterations.
std::vector<double> conjugate_gradient(const HelmholtzOperator& op, std::span<const double> b,
                                       std::vector<double> x0, double tol, int max_iter);

/// Dense row-major matrix; used as a test oracle.
struct DenseMatrix {
  int n = 0;
  std::vector<double> data;
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }
};

/// Explicit matrix of I - alpha Lap_h. Refuses grids above 4096 cells.
DenseMatrix assemble_dense(const HelmholtzOperator& op);

}  // namespace lowmach
