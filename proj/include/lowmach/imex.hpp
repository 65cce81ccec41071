#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lowmach {

/// Double Butcher tableau of an IMEX Runge-Kutta scheme. The explicit part
/// (a_exp, b_exp, c_exp) integrates convection, the implicit part the
/// acoustic terms. Matrices are dense row-major s x s.
struct DoubleTableau {
  std::string name;
  int stages = 0;
  std::vector<double> a_exp, a_imp;
  std::vector<double> b_exp, b_imp;
  std::vector<double> c_exp, c_imp;

  double exp(int i, int j) const { return a_exp[i * stages + j]; }
  double imp(int i, int j) const { return a_imp[i * stages + j]; }
  /// True when the implicit row is identically zero, i.e. the stage is the
  /// time-t_n state and needs no solve.
  bool trivial_stage(int i) const;
};

/// First-order ARS(1,1,1) in two-stage form; stage 1 is the time-t_n state.
DoubleTableau ars111();

/// Second-order ARS(2,2,2) in three-stage form with g = 1 - 1/sqrt(2) and
/// d = 1 - 1/(2g).
DoubleTableau ars222();

/// Looks up a tableau by its CLI name ("ars111", "ars222").
DoubleTableau tableau_by_name(std::string_view name);

/// Checks the structural invariants (explicit part strictly lower triangular,
/// implicit part diagonally implicit, abscissae consistent, globally stiffly
/// accurate). Returns one message per violation; empty means valid.
std::vector<std::string> validate_tableau(const DoubleTableau& t, double tol = 1e-14);

}  // namespace lowmach
