#include "lowmach/imex.hpp"

#include <cmath>

#include "lowmach/errors.hpp"

namespace lowmach {

bool DoubleTableau::trivial_stage(int i) const {
  for (int j = 0; j < stages; ++j)
    if (imp(i, j) != 0.0) return false;
  return true;
}

namespace {

void fill_abscissae(DoubleTableau& t) {
  const int s = t.stages;
  t.c_exp.assign(s, 0.0);
  t.c_imp.assign(s, 0.0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      t.c_exp[i] += t.exp(i, j);
      t.c_imp[i] += t.imp(i, j);
    }
}

}  // namespace

DoubleTableau ars111() {
  DoubleTableau t;
  t.name = "ars111";
  t.stages = 2;
  t.a_exp = {0.0, 0.0,
             1.0, 0.0};
  t.a_imp = {0.0, 0.0,
             0.0, 1.0};
  t.b_exp = {1.0, 0.0};
  t.b_imp = {0.0, 1.0};
  fill_abscissae(t);
  return t;
}

DoubleTableau ars222() {
  const double g = 1.0 - 1.0 / std::sqrt(2.0);
  const double d = 1.0 - 1.0 / (2.0 * g);
  DoubleTableau t;
  t.name = "ars222";
  t.stages = 3;
  t.a_exp = {0.0, 0.0,     0.0,
             g,   0.0,     0.0,
             d,   1.0 - d, 0.0};
  t.a_imp = {0.0, 0.0,     0.0,
             0.0, g,       0.0,
             0.0, 1.0 - g, g};
  t.b_exp = {d, 1.0 - d, 0.0};
  t.b_imp = {0.0, 1.0 - g, g};
  fill_abscissae(t);
  return t;
}

DoubleTableau tableau_by_name(std::string_view name) {
  if (name == "ars111") return ars111();
  if (name == "ars222") return ars222();
  throw ConfigError("unknown scheme '" + std::string(name) + "' (expected ars111 or ars222)");
}

std::vector<std::string> validate_tableau(const DoubleTableau& t, double tol) {
  std::vector<std::string> errors;
  const int s = t.stages;
  const auto n = static_cast<std::size_t>(s);
  if (s < 1 || t.a_exp.size() != n * n || t.a_imp.size() != n * n || t.b_exp.size() != n ||
      t.b_imp.size() != n || t.c_exp.size() != n || t.c_imp.size() != n) {
    errors.emplace_back("shape: arrays do not match the stage count");
    return errors;
  }
  auto near = [tol](double a, double b) { return std::abs(a - b) <= tol; };

  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j)
      if (t.exp(i, j) != 0.0)
        errors.push_back("explicit: a_exp(" + std::to_string(i) + "," + std::to_string(j) +
                         ") must vanish (strictly lower triangular)");
    for (int j = i + 1; j < s; ++j)
      if (t.imp(i, j) != 0.0)
        errors.push_back("implicit: a_imp(" + std::to_string(i) + "," + std::to_string(j) +
                         ") must vanish (lower triangular)");
    if (!t.trivial_stage(i) && t.imp(i, i) == 0.0)
      errors.push_back("implicit: stage " + std::to_string(i) +
                       " has a zero diagonal but a non-zero row (not diagonally implicit)");

    double ce = 0.0, ci = 0.0;
    for (int j = 0; j < s; ++j) {
      ce += t.exp(i, j);
      ci += t.imp(i, j);
    }
    if (!near(ce, t.c_exp[i]))
      errors.push_back("abscissa: c_exp[" + std::to_string(i) + "] != row sum");
    if (!near(ci, t.c_imp[i]))
      errors.push_back("abscissa: c_imp[" + std::to_string(i) + "] != row sum");
  }

  if (!near(t.c_exp[s - 1], 1.0) || !near(t.c_imp[s - 1], 1.0))
    errors.emplace_back("GSA: last abscissae must equal 1");
  for (int j = 0; j < s; ++j) {
    if (!near(t.imp(s - 1, j), t.b_imp[j]))
      errors.push_back("GSA: last implicit row differs from b_imp at column " + std::to_string(j));
    if (!near(t.exp(s - 1, j), t.b_exp[j]))
      errors.push_back("GSA: last explicit row differs from b_exp at column " + std::to_string(j));
  }
  return errors;
}

}  // namespace lowmach
