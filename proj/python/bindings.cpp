#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "lowmach/config.hpp"
#include "lowmach/diagnostics.hpp"
#include "lowmach/elliptic.hpp"
#include "lowmach/errors.hpp"
#include "lowmach/imex.hpp"
#include "lowmach/model.hpp"
#include "lowmach/problems.hpp"
#include "lowmach/spatial.hpp"
#include "lowmach/stepper.hpp"

namespace py = pybind11;
namespace lm = lowmach;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                               std::size_t expected, const char* what) {
  if (static_cast<std::size_t>(a.size()) != expected)
    throw lm::ConfigError(std::string(what) + " has " + std::to_string(a.size()) +
                          " entries, expected " + std::to_string(expected));
  return {a.data(), a.data() + a.size()};
}

lm::CellState cell_from(double rho, double mom1, double mom2) {
  lm::CellState s;
  s.rho = rho;
  s.mom = {mom1, mom2};
  return s;
}

lm::RunConfig config_from_kwargs(const py::kwargs& kwargs) {
  lm::RunConfig config;
  for (const auto& [key, value] : kwargs) {
    const std::string name = py::str(key);
    std::string text;
    if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      for (const auto& item : value) text += (text.empty() ? "" : ",") + std::string(py::str(item));
    } else if (py::isinstance<py::bool_>(value)) {
      text = value.cast<bool>() ? "true" : "false";
    } else {
      text = py::str(value);
    }
    lm::apply_setting(config, name, text);
  }
  config.validate();
  return config;
}

py::dict field_dict(const lm::Field& f) {
  py::dict d;
  d["rho"] = to_array(f.rho);
  d["mom1"] = to_array(f.mom[0]);
  if (f.dim() == 2) d["mom2"] = to_array(f.mom[1]);
  std::vector<double> x1(f.rho.size()), x2(f.rho.size());
  for (int c = 0; c < f.cells(); ++c) {
    x1[c] = f.grid.center(c, 0);
    if (f.dim() == 2) x2[c] = f.grid.center(c, 1);
  }
  d["x1"] = to_array(x1);
  if (f.dim() == 2) d["x2"] = to_array(x2);
  return d;
}

py::dict series_dict(const std::vector<lm::DiagnosticsRow>& rows) {
  std::vector<double> t, eta, ke, pe;
  for (const auto& r : rows) {
    t.push_back(r.t);
    eta.push_back(r.entropy);
    ke.push_back(r.ke);
    pe.push_back(r.pe);
  }
  py::dict d;
  d["t"] = to_array(t);
  d["entropy"] = to_array(eta);
  d["kinetic_energy"] = to_array(ke);
  d["potential_energy"] = to_array(pe);
  return d;
}

// Runs a configuration in memory and returns the final state and the entropy series.
py::dict simulate(const py::kwargs& kwargs) {
  const lm::RunConfig config = config_from_kwargs(kwargs);
  const lm::ProblemSpec spec = config.problem_spec();
  const lm::Field initial =
      lm::sample_initial_condition(spec.ic, spec.make_grid(config.resolved_nx(), config.resolved_ny()));
  py::dict out;
  try {
    std::optional<lm::RunResult> result;
    {
      py::gil_scoped_release release;
      result = lm::run(initial, spec.params, lm::tableau_by_name(config.scheme),
                       config.scheme_options(), config.step_controls());
    }
    out["blew_up"] = false;
    out["steps"] = result->steps;
    out["state"] = field_dict(result->final_state);
    out["diagnostics"] = series_dict(result->series);
  } catch (const lm::BlowUpError& e) {
    out["blew_up"] = true;
    out["message"] = std::string(e.what());
    out["steps"] = e.step();
    out["time"] = e.time();
    out["state"] = field_dict(e.last_valid());
  }
  return out;
}

py::list eoc_rows(const lm::EocTable& table) {
  py::list rows;
  for (const auto& r : table) {
    py::dict d;
    d["n"] = r.n;
    d["dx"] = r.dx;
    d["error"] = r.error;
    d["eoc"] = r.eoc;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_lowmach, m) {
  m.doc() = "Asymptotic preserving IMEX finite volume solver for the low Mach barotropic Euler system.";

  py::register_exception<lm::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<lm::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<lm::SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<lm::BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);

  py::class_<lm::ModelParams>(m, "ModelParams")
      .def(py::init([](double kappa, double gamma, double eps) {
             lm::ModelParams p{kappa, gamma, eps};
             p.validate();
             return p;
           }),
           py::arg("kappa") = 1.0, py::arg("gamma") = 2.0, py::arg("eps") = 1.0)
      .def_readwrite("kappa", &lm::ModelParams::kappa)
      .def_readwrite("gamma", &lm::ModelParams::gamma)
      .def_readwrite("eps", &lm::ModelParams::eps)
      .def("__repr__", [](const lm::ModelParams& p) {
        return "ModelParams(kappa=" + lm::format_double(p.kappa) + ", gamma=" +
               lm::format_double(p.gamma) + ", eps=" + lm::format_double(p.eps) + ")";
      });

  m.def("pressure", &lm::pressure, "kappa * rho^gamma.", py::arg("rho"), py::arg("params"));
  m.def("pressure_derivative", &lm::pressure_derivative, "kappa * gamma * rho^(gamma - 1).",
        py::arg("rho"), py::arg("params"));
  m.def(
      "entropy_quantities",
      [](double rho, std::vector<double> velocity, const lm::ModelParams& params) {
        const int dim = static_cast<int>(velocity.size());
        if (dim < 1 || dim > 2) throw lm::ConfigError("velocity must have one or two components");
        velocity.resize(2, 0.0);
        const auto q = lm::entropy_quantities(cell_from(rho, rho * velocity[0], rho * velocity[1]),
                                              dim, params);
        py::dict d;
        d["eta"] = q.eta;
        d["omega"] = std::vector<double>(q.omega.begin(), q.omega.begin() + dim);
        d["v"] = std::vector<double>(q.v.begin(), q.v.begin() + dim + 1);
        return d;
      },
      "Entropy, entropy flux and entropy variables of one state.", py::arg("rho"),
      py::arg("velocity"), py::arg("params"));
  m.def("rho_gamma_mean", &lm::rho_gamma_mean, "Density mean of the entropy conservative flux.",
        py::arg("rho_k"), py::arg("rho_l"), py::arg("gamma"));
  m.def(
      "entropy_conservative_flux",
      [](double rho_k, double u_k, double rho_l, double u_l, const lm::ModelParams& params) {
        const auto g = lm::entropy_conservative_flux(cell_from(rho_k, rho_k * u_k, 0.0),
                                                     cell_from(rho_l, rho_l * u_l, 0.0), 0, 1, params);
        return std::vector<double>{g[0], g[1]};
      },
      "One-dimensional entropy conservative flux (mass, momentum) between two states.",
      py::arg("rho_k"), py::arg("u_k"), py::arg("rho_l"), py::arg("u_l"), py::arg("params"));

  py::class_<lm::PeriodicGrid>(m, "PeriodicGrid")
      .def_static("line", &lm::PeriodicGrid::line, py::arg("n"), py::arg("lo"), py::arg("hi"))
      .def_static("rectangle", &lm::PeriodicGrid::rectangle, py::arg("nx"), py::arg("ny"),
                  py::arg("lo"), py::arg("hi"))
      .def_property_readonly("dim", &lm::PeriodicGrid::dim)
      .def_property_readonly("cells", &lm::PeriodicGrid::cells)
      .def("n", &lm::PeriodicGrid::n, py::arg("dir"))
      .def("dx", &lm::PeriodicGrid::dx, py::arg("dir"))
      .def("centers", [](const lm::PeriodicGrid& g, int dir) {
        std::vector<double> x(static_cast<std::size_t>(g.cells()));
        for (int c = 0; c < g.cells(); ++c) x[c] = g.center(c, dir);
        return to_array(x);
      }, py::arg("dir") = 0);

  m.def(
      "initial_state",
      [](const std::string& problem, double eps, int nx, int ny) {
        const auto spec = lm::problem_by_name(problem, eps);
        return field_dict(lm::sample_initial_condition(spec.ic, spec.make_grid(nx, ny > 0 ? ny : nx)));
      },
      "Initial data of a benchmark sampled at cell centres.", py::arg("problem"), py::arg("eps"),
      py::arg("nx"), py::arg("ny") = 0);

  m.def(
      "global_energies",
      [](const lm::PeriodicGrid& grid, py::array_t<double> rho, py::array_t<double> mom1,
         std::optional<py::array_t<double>> mom2, const lm::ModelParams& params) {
        lm::Field f(grid);
        const auto n = static_cast<std::size_t>(grid.cells());
        f.rho = from_array(rho, n, "rho");
        f.mom[0] = from_array(mom1, n, "mom1");
        if (grid.dim() == 2) {
          if (!mom2) throw lm::ConfigError("mom2 is required on a 2D grid");
          f.mom[1] = from_array(*mom2, n, "mom2");
        }
        const auto r = lm::global_energies(f, params);
        py::dict d;
        d["entropy"] = r.entropy;
        d["kinetic_energy"] = r.ke;
        d["potential_energy"] = r.pe;
        return d;
      },
      "Global entropy split into kinetic and potential energy.", py::arg("grid"), py::arg("rho"),
      py::arg("mom1"), py::arg("mom2") = py::none(), py::arg("params"));

  py::enum_<lm::HelmholtzMethod>(m, "HelmholtzMethod")
      .value("SPECTRAL", lm::HelmholtzMethod::Spectral)
      .value("CYCLIC_TRIDIAGONAL", lm::HelmholtzMethod::CyclicTridiagonal)
      .value("CONJUGATE_GRADIENT", lm::HelmholtzMethod::ConjugateGradient);

  m.def(
      "solve_helmholtz",
      [](const lm::PeriodicGrid& grid, double alpha, py::array_t<double> b, double tol,
         lm::HelmholtzMethod method) {
        const auto rhs = from_array(b, static_cast<std::size_t>(grid.cells()), "b");
        return to_array(lm::solve_helmholtz({grid, alpha}, rhs, tol, method));
      },
      "Solves (I - alpha Lap_h) x = b on the periodic grid.", py::arg("grid"), py::arg("alpha"),
      py::arg("b"), py::arg("tol") = 1e-12, py::arg("method") = lm::HelmholtzMethod::Spectral);

  m.def(
      "tableau",
      [](const std::string& name) {
        const auto t = lm::tableau_by_name(name);
        py::dict d;
        d["name"] = t.name;
        d["stages"] = t.stages;
        d["a_exp"] = t.a_exp;
        d["a_imp"] = t.a_imp;
        d["b_exp"] = t.b_exp;
        d["b_imp"] = t.b_imp;
        d["problems"] = lm::validate_tableau(t);
        return d;
      },
      "Butcher tableau of a named IMEX scheme with its validation report.", py::arg("name"));

  m.def(
      "compute_eoc",
      [](const std::vector<double>& dx, const std::vector<double>& error) {
        if (dx.size() != error.size()) throw lm::ConfigError("dx and error differ in length");
        std::vector<lm::ErrorSample> samples;
        for (std::size_t i = 0; i < dx.size(); ++i) samples.push_back({0, dx[i], {error[i]}});
        std::vector<std::optional<double>> out;
        for (const auto& row : lm::compute_eoc(samples))
          out.push_back(row.eoc.empty() ? std::nullopt : row.eoc[0]);
        return out;
      },
      "Experimental orders of convergence; the first entry is None.", py::arg("dx"),
      py::arg("error"));

  m.def("simulate", &simulate,
        "Runs one simulation in memory. Keyword arguments use the configuration keys "
        "(problem, disc_type, es_order, q, scheme, eps, cfl, nx, ny, t_final, dt_cap, ...).");
  m.def(
      "run_single",
      [](const py::kwargs& kwargs) {
        const auto config = config_from_kwargs(kwargs);
        py::gil_scoped_release release;
        return lm::run_single(config);
      },
      "Runs one simulation and writes its CSV outputs to out_dir. Returns the exit status.");
  m.def(
      "run_eoc",
      [](const py::kwargs& kwargs) {
        const auto config = config_from_kwargs(kwargs);
        lm::EocTable table;
        {
          py::gil_scoped_release release;
          table = lm::run_eoc(config);
        }
        return eoc_rows(table);
      },
      "Runs a convergence study and writes eoc.csv to out_dir.");
  m.attr("__version__") = lm::code_version();
}
