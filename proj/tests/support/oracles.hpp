#pragma once

// Reference computations for the tests. Everything here is written from the
// defining formulas and deliberately shares no code with the library.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

/// Dense matrix of I - alpha Lap_h on a periodic nx x ny grid (ny = 1 in 1D)
/// with spacings dx, dy, assembled from the 3/5-point stencil.
inline std::vector<long double> helmholtz_matrix(int nx, int ny, double dx, double dy,
                                                 double alpha) {
  const int n = nx * ny;
  std::vector<long double> a(static_cast<std::size_t>(n) * n, 0.0L);
  auto at = [&](int r, int c) -> long double& { return a[static_cast<std::size_t>(r) * n + c]; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int row = i + nx * j;
      at(row, row) += 1.0L;
      const long double cx = static_cast<long double>(alpha) / (static_cast<long double>(dx) * dx);
      at(row, row) += 2.0L * cx;
      at(row, (i + 1) % nx + nx * j) -= cx;
      at(row, (i + nx - 1) % nx + nx * j) -= cx;
      if (ny > 1) {
        const long double cy =
            static_cast<long double>(alpha) / (static_cast<long double>(dy) * dy);
        at(row, row) += 2.0L * cy;
        at(row, i + nx * ((j + 1) % ny)) -= cy;
        at(row, i + nx * ((j + ny - 1) % ny)) -= cy;
      }
    }
  }
  return a;
}

/// Gaussian elimination with partial pivoting in long double, followed by
/// iterative refinement with residuals accumulated in __float128.
inline std::vector<double> dense_solve(std::vector<long double> a, const std::vector<double>& b) {
  const int n = static_cast<int>(b.size());
  const std::vector<long double> original = a;
  std::vector<int> piv(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int r = k + 1; r < n; ++r)
      if (std::fabs(a[static_cast<std::size_t>(r) * n + k]) >
          std::fabs(a[static_cast<std::size_t>(p) * n + k]))
        p = r;
    piv[k] = p;
    if (p != k)
      for (int c = 0; c < n; ++c)
        std::swap(a[static_cast<std::size_t>(k) * n + c], a[static_cast<std::size_t>(p) * n + c]);
    const long double d = a[static_cast<std::size_t>(k) * n + k];
    if (d == 0.0L) throw std::runtime_error("singular matrix in dense oracle");
    for (int r = k + 1; r < n; ++r) {
      long double& l = a[static_cast<std::size_t>(r) * n + k];
      l /= d;
      if (l == 0.0L) continue;
      for (int c = k + 1; c < n; ++c)
        a[static_cast<std::size_t>(r) * n + c] -= l * a[static_cast<std::size_t>(k) * n + c];
    }
  }
  auto lu_solve = [&](std::vector<long double> y) {
    for (int k = 0; k < n; ++k) std::swap(y[k], y[piv[k]]);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < r; ++c) y[r] -= a[static_cast<std::size_t>(r) * n + c] * y[c];
    for (int r = n - 1; r >= 0; --r) {
      for (int c = r + 1; c < n; ++c) y[r] -= a[static_cast<std::size_t>(r) * n + c] * y[c];
      y[r] /= a[static_cast<std::size_t>(r) * n + r];
    }
    return y;
  };
  std::vector<long double> x = lu_solve(std::vector<long double>(b.begin(), b.end()));
  for (int it = 0; it < 5; ++it) {
    std::vector<long double> r(n);
    for (int i = 0; i < n; ++i) {
      __float128 s = b[i];
      for (int j = 0; j < n; ++j)
        s -= static_cast<__float128>(original[static_cast<std::size_t>(i) * n + j]) *
             static_cast<__float128>(x[j]);
      r[i] = static_cast<long double>(s);
    }
    const std::vector<long double> dx = lu_solve(r);
    for (int i = 0; i < n; ++i) x[i] += dx[i];
  }
  return std::vector<double>(x.begin(), x.end());
}

/// Entropy variables, entropy flux and physical flux of a 1D state, from the
/// closed-form expressions of the barotropic model.
struct State1D {
  double rho, u;
};

inline double pressure(double rho, double kappa, double gamma) {
  return kappa * std::pow(rho, gamma);
}

inline std::vector<long double> entropy_variables(State1D s, double kappa, double gamma,
                                                  double eps) {
  const long double r = s.rho, u = s.u;
  return {-0.5L * u * u + kappa * gamma / (gamma - 1.0) * std::pow(r, gamma - 1.0L) / (eps * eps),
          u};
}

inline long double entropy_flux(State1D s, double kappa, double gamma, double eps) {
  const long double r = s.rho, u = s.u;
  const long double p = kappa * std::pow(r, static_cast<long double>(gamma));
  const long double eta = 0.5L * r * u * u + p / ((eps * eps) * (gamma - 1.0));
  return u * (eta + p / (eps * eps));
}

inline std::vector<long double> physical_flux(State1D s, double kappa, double gamma, double eps) {
  const long double r = s.rho, u = s.u;
  return {r * u, r * u * u + kappa * std::pow(r, static_cast<long double>(gamma)) / (eps * eps)};
}

/// ((g-1)/g) (b^g - a^g) / (b^(g-1) - a^(g-1)) evaluated in long double.
inline long double rho_gamma_mean(long double a, long double b, long double g) {
  if (a == b) return a;
  return (g - 1.0L) / g * (std::pow(b, g) - std::pow(a, g)) /
         (std::pow(b, g - 1.0L) - std::pow(a, g - 1.0L));
}

inline double eoc(double dx_c, double e_c, double dx_f, double e_f) {
  return std::log(e_c / e_f) / std::log(dx_c / dx_f);
}

}  // namespace oracle
