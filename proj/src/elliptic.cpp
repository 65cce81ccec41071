#include "lowmach/elliptic.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lowmach/errors.hpp"
#include "lowmach/spatial.hpp"

namespace lowmach {

namespace {

double norm2(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

/// Eigenvalue of -Lap_h for Fourier index k on an n-cell periodic line.
double laplacian_symbol(int k, int n, double dx) {
  const double s = std::sin(std::numbers::pi * k / n);
  return 4.0 * s * s / (dx * dx);
}

}  // namespace

std::vector<double> HelmholtzOperator::apply(std::span<const double> x) const {
  std::vector<double> out = pressure_laplacian(x, grid);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = x[c] - alpha * out[c];
  return out;
}

double HelmholtzOperator::norm_inf() const {
  double s = 0.0;
  for (int dir = 0; dir < grid.dim(); ++dir) s += 4.0 / (grid.dx(dir) * grid.dx(dir));
  return 1.0 + alpha * s;
}

double helmholtz_backward_error(const HelmholtzOperator& op, std::span<const double> x,
                                std::span<const double> b) {
  std::vector<double> r = op.apply(x);
  for (std::size_t c = 0; c < r.size(); ++c) r[c] -= b[c];
  const double scale = op.norm_inf() * norm2(x) + norm2(b);
  return scale > 0.0 ? norm2(r) / scale : 0.0;
}

struct HelmholtzSolver::FftPlans {
  int real_size = 0;
  int complex_size = 0;
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::vector<double> symbol;  // eigenvalue of -Lap_h per stored complex coefficient

  explicit FftPlans(const PeriodicGrid& g) {
    const int nx = g.n(0);
    const int ny = g.dim() == 2 ? g.n(1) : 1;
    const int half = nx / 2 + 1;
    real_size = nx * ny;
    complex_size = half * ny;
    real = fftw_alloc_real(static_cast<std::size_t>(real_size));
    spectrum = fftw_alloc_complex(static_cast<std::size_t>(complex_size));
    if (g.dim() == 1) {
      forward = fftw_plan_dft_r2c_1d(nx, real, spectrum, FFTW_ESTIMATE);
      backward = fftw_plan_dft_c2r_1d(nx, spectrum, real, FFTW_ESTIMATE);
    } else {
      forward = fftw_plan_dft_r2c_2d(ny, nx, real, spectrum, FFTW_ESTIMATE);
      backward = fftw_plan_dft_c2r_2d(ny, nx, spectrum, real, FFTW_ESTIMATE);
    }
    symbol.resize(static_cast<std::size_t>(complex_size));
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < half; ++i) {
        double lam = laplacian_symbol(i, nx, g.dx(0));
        if (g.dim() == 2) lam += laplacian_symbol(j, ny, g.dx(1));
        symbol[static_cast<std::size_t>(j) * half + i] = lam;
      }
  }

  ~FftPlans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spectrum);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
};

HelmholtzSolver::HelmholtzSolver(const PeriodicGrid& grid, HelmholtzMethod method)
    : grid_(grid), method_(method) {
  if (method_ == HelmholtzMethod::CyclicTridiagonal && grid_.dim() != 1)
    throw ConfigError("cyclic tridiagonal Helmholtz solve is 1D only");
  if (method_ == HelmholtzMethod::Spectral) fft_ = std::make_unique<FftPlans>(grid_);
}

HelmholtzSolver::~HelmholtzSolver() = default;
HelmholtzSolver::HelmholtzSolver(HelmholtzSolver&&) noexcept = default;
HelmholtzSolver& HelmholtzSolver::operator=(HelmholtzSolver&&) noexcept = default;

std::vector<double> HelmholtzSolver::solve_spectral(double alpha, std::span<const double> b) {
  FftPlans& f = *fft_;
  std::copy(b.begin(), b.end(), f.real);
  fftw_execute(f.forward);
  const double norm = 1.0 / f.real_size;
  for (int m = 0; m < f.complex_size; ++m) {
    const double scale = norm / (1.0 + alpha * f.symbol[static_cast<std::size_t>(m)]);
    f.spectrum[m][0] *= scale;
    f.spectrum[m][1] *= scale;
  }
  fftw_execute(f.backward);
  return {f.real, f.real + f.real_size};
}

std::vector<double> HelmholtzSolver::solve(double alpha, std::span<const double> b, double tol) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw DomainError("Helmholtz coefficient must be finite and non-negative");
  if (!(tol > 0.0)) throw ConfigError("Helmholtz tolerance must be positive");
  if (static_cast<int>(b.size()) != grid_.cells())
    throw DomainError("Helmholtz right-hand side has the wrong size");
  for (double v : b)
    if (!std::isfinite(v)) throw SolverError("non-finite Helmholtz right-hand side", NAN);

  const HelmholtzOperator op{grid_, alpha};
  std::vector<double> x;
  switch (method_) {
    case HelmholtzMethod::Spectral:
      x = solve_spectral(alpha, b);
      break;
    case HelmholtzMethod::CyclicTridiagonal: {
      const double a = alpha / (grid_.dx(0) * grid_.dx(0));
      if (grid_.n(0) >= 3) {
        // The constant mode is mapped to itself, so only the zero-mean part
        // goes through the elimination. For large alpha the mean dominates x
        // and would otherwise swamp the small remainder with rounding error.
        const double mean = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
        std::vector<double> fluctuation(b.begin(), b.end());
        for (double& v : fluctuation) v -= mean;
        x = solve_cyclic_tridiagonal(1.0 + 2.0 * a, -a, fluctuation);
        for (double& v : x) v += mean;
      } else {
        x.assign(b.begin(), b.end());
        x = conjugate_gradient(op, b, std::move(x), tol, 10);
      }
      break;
    }
    case HelmholtzMethod::ConjugateGradient:
      return conjugate_gradient(op, b, std::vector<double>(b.begin(), b.end()), tol,
                                2 * grid_.cells() + 100);
  }
  if (helmholtz_backward_error(op, x, b) > tol)
    x = conjugate_gradient(op, b, std::move(x), tol, 2 * grid_.cells() + 100);
  return x;
}

std::vector<double> solve_helmholtz(const HelmholtzOperator& op, std::span<const double> b,
                                    double tol, HelmholtzMethod method) {
  HelmholtzSolver solver(op.grid, method);
  return solver.solve(op.alpha, b, tol);
}

std::vector<double> solve_cyclic_tridiagonal(double diag, double off, std::span<const double> b) {
  const auto n = b.size();
  if (n < 3) throw DomainError("cyclic tridiagonal solve needs at least 3 unknowns");
  // Sherman-Morrison: A = T + u v^T with u = (g, 0, .., off), v = (1, 0, .., off/g).
  const double g = -diag;
  std::vector<double> main(n, diag);
  main[0] = diag - g;
  main[n - 1] = diag - off * off / g;

  auto thomas = [&](std::span<const double> rhs) {
    std::vector<double> c(n), d(n);
    c[0] = off / main[0];
    d[0] = rhs[0] / main[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double m = main[i] - off * c[i - 1];
      c[i] = off / m;
      d[i] = (rhs[i] - off * d[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
  };

  std::vector<double> u(n, 0.0);
  u[0] = g;
  u[n - 1] = off;
  const std::vector<double> y = thomas(b);
  const std::vector<double> z = thomas(u);
  const double factor = (y[0] + off / g * y[n - 1]) / (1.0 + z[0] + off / g * z[n - 1]);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - factor * z[i];
  return x;
}

std::vector<double> conjugate_gradient(const HelmholtzOperator& op, std::span<const double> b,
                                       std::vector<double> x, double tol, int max_iter) {
  const double a_norm = op.norm_inf();
  const double b_norm = norm2(b);
  std::vector<double> r = op.apply(x);
  for (std::size_t c = 0; c < r.size(); ++c) r[c] = b[c] - r[c];
  std::vector<double> p = r;
  double rr = std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
  for (int it = 0; it <= max_iter; ++it) {
    const double scale = a_norm * norm2(x) + b_norm;
    if (scale == 0.0 || std::sqrt(rr) <= tol * scale) return x;
    if (it == max_iter) break;
    const std::vector<double> ap = op.apply(p);
    const double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
    if (!(pap > 0.0)) break;
    const double step = rr / pap;
    for (std::size_t c = 0; c < x.size(); ++c) {
      x[c] += step * p[c];
      r[c] -= step * ap[c];
    }
    const double rr_new = std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = r[c] + rr_new / rr * p[c];
    rr = rr_new;
  }
  const double residual = helmholtz_backward_error(op, x, b);
  throw SolverError("conjugate gradients did not converge (backward error " +
                        std::to_string(residual) + ")",
                    residual);
}

DenseMatrix assemble_dense(const HelmholtzOperator& op) {
  const int n = op.grid.cells();
  if (n > 4096) throw DomainError("dense assembly refused for more than 4096 cells");
  DenseMatrix m;
  m.n = n;
  m.data.assign(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    const std::vector<double> col = op.apply(e);
    for (int i = 0; i < n; ++i) m.data[static_cast<std::size_t>(i) * n + j] = col[i];
    e[j] = 0.0;
  }
  return m;
}

}  // namespace lowmach
