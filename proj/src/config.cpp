#include "lowmach/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "lowmach/diagnostics.hpp"
#include "lowmach/errors.hpp"

#ifndef LOWMACH_VERSION
#define LOWMACH_VERSION "unknown"
#endif

namespace lowmach {

const char* code_version() { return LOWMACH_VERSION; }

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw ConfigError("malformed number '" + std::string(text) + "' for " + std::string(key));
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw ConfigError("malformed integer '" + std::string(text) + "' for " + std::string(key));
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("malformed flag '" + std::string(text) + "' for " + std::string(key));
}

/// Splits a list on commas and/or whitespace.
std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto next = text.find_first_of(", \t", pos);
    const auto item = trim(text.substr(pos, next - pos));
    if (!item.empty()) items.push_back(item);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return items;
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view key, std::string_view text, Parse parse) {
  std::vector<T> out;
  for (auto item : split_list(text)) out.push_back(parse(key, item));
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"problem", [](RunConfig& c, auto, auto v) { c.problem = std::string(trim(v)); }},
      {"disc_type", [](RunConfig& c, auto k, auto v) { c.disc_type = parse_int(k, v); }},
      {"es_order", [](RunConfig& c, auto k, auto v) { c.es_order = parse_int(k, v); }},
      {"q", [](RunConfig& c, auto k, auto v) { c.q = parse_double(k, v); }},
      {"scheme", [](RunConfig& c, auto, auto v) { c.scheme = std::string(trim(v)); }},
      {"eps", [](RunConfig& c, auto k, auto v) { c.eps = parse_double(k, v); }},
      {"cfl", [](RunConfig& c, auto k, auto v) { c.cfl = parse_double(k, v); }},
      {"nx", [](RunConfig& c, auto k, auto v) { c.nx = parse_int(k, v); }},
      {"ny", [](RunConfig& c, auto k, auto v) { c.ny = parse_int(k, v); }},
      {"t_final", [](RunConfig& c, auto k, auto v) { c.t_final = parse_double(k, v); }},
      {"snapshot_times",
       [](RunConfig& c, auto k, auto v) { c.snapshot_times = parse_list<double>(k, v, parse_double); }},
      {"out_dir", [](RunConfig& c, auto, auto v) { c.out_dir = std::string(trim(v)); }},
      {"helmholtz_tol", [](RunConfig& c, auto k, auto v) { c.helmholtz_tol = parse_double(k, v); }},
      {"nonlinear_pressure",
       [](RunConfig& c, auto k, auto v) { c.nonlinear_pressure = parse_bool(k, v); }},
      {"dt_cap", [](RunConfig& c, auto k, auto v) { c.dt_cap = parse_double(k, v); }},
      {"rho0", [](RunConfig& c, auto k, auto v) { c.rho0 = parse_double(k, v); }},
      {"grids", [](RunConfig& c, auto k, auto v) { c.grids = parse_list<int>(k, v, parse_int); }},
      {"reference_n", [](RunConfig& c, auto k, auto v) { c.reference_n = parse_int(k, v); }},
  };
  return table;
}

std::string csv_number(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void write_field(const std::filesystem::path& path, const Field& f) {
  auto out = open_output(path);
  out << (f.dim() == 1 ? "x,rho,mom1\n" : "x1,x2,rho,mom1,mom2\n");
  for (int c = 0; c < f.cells(); ++c) {
    out << csv_number(f.grid.center(c, 0)) << ',';
    if (f.dim() == 2) out << csv_number(f.grid.center(c, 1)) << ',';
    out << csv_number(f.rho[c]) << ',' << csv_number(f.mom[0][c]);
    if (f.dim() == 2) out << ',' << csv_number(f.mom[1][c]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_meta(const RunConfig& config) {
  auto out = open_output(config.out_dir / "run_meta.csv");
  out << "key,value\n";
  for (const auto& [k, v] : config_entries(config)) out << k << ',' << v << '\n';
  if (!out) throw std::runtime_error("failed writing run_meta.csv");
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown key '" + std::string(key) + "'");
  it->second(config, key, value);
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    // `key = value` takes precedence; otherwise the first comma separates (CSV form).
    auto sep = text.find('=');
    if (sep == std::string_view::npos) sep = text.find(',');
    const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
    if (sep == std::string_view::npos)
      throw ConfigError(where + "expected 'key = value', got '" + std::string(text) + "'");
    const auto key = trim(text.substr(0, sep));
    const auto value = trim(text.substr(sep + 1));
    if (key == "key" && value == "value") continue;
    if (key == "code_version") continue;
    try {
      apply_setting(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Low Mach IMEX finite volume simulator"};
  std::string config_file;
  app.add_option("--config", config_file, "flat key = value file; flags override it");

  struct Flag {
    const char* name;
    const char* key;
    const char* help;
    std::string value;
  };
  std::vector<Flag> flags{
      {"--problem", "problem", "standard_periodic|colliding_acoustic|riemann|gresho|travelling_vortex", {}},
      {"--type", "disc_type", "space discretisation type 1, 2 or 3", {}},
      {"--es-order", "es_order", "order of the entropy stable flux (type 3 only)", {}},
      {"--q", "q", "dissipation strength of the entropy stable flux", {}},
      {"--scheme", "scheme", "ars111 or ars222", {}},
      {"--eps", "eps", "Mach number parameter (required)", {}},
      {"--cfl", "cfl", "CFL number C", {}},
      {"--nx", "nx", "cells in x1", {}},
      {"--ny", "ny", "cells in x2 (2D problems)", {}},
      {"--tfinal", "t_final", "final time", {}},
      {"--snapshots", "snapshot_times", "comma separated snapshot times", {}},
      {"--out", "out_dir", "output directory", {}},
      {"--helmholtz-tol", "helmholtz_tol", "backward error tolerance of the implicit solve", {}},
      {"--dt-cap", "dt_cap", "upper bound on the time step", {}},
      {"--rho0", "rho0", "reference density of the pressure linearisation", {}},
      {"--grids", "grids", "study grid sizes of a convergence run", {}},
      {"--reference", "reference_n", "reference grid size of a convergence run", {}},
  };
  std::vector<CLI::Option*> options;
  for (auto& f : flags) options.push_back(app.add_option(f.name, f.value, f.help));
  bool nonlinear = false;
  auto* nonlinear_flag =
      app.add_flag("--nonlinear-pressure", nonlinear, "use p(rho) in the momentum pressure gradient");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string(e.what()) + "\n" + app.help());
  }

  RunConfig config;
  if (!config_file.empty()) apply_config_file(config, config_file);
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (options[i]->count() > 0) {
      try {
        apply_setting(config, flags[i].key, flags[i].value);
      } catch (const ConfigError& e) {
        throw ConfigError(std::string(flags[i].name) + ": " + e.what());
      }
    }
  if (nonlinear_flag->count() > 0) config.nonlinear_pressure = nonlinear;
  config.validate();
  return config;
}

void RunConfig::validate() const {
  if (!eps) throw ConfigError("missing required key 'eps'");
  if (!(*eps > 0.0)) throw ConfigError("eps must be positive");
  const ProblemSpec spec = problem_spec();
  if (disc_type < 1 || disc_type > 3) throw ConfigError("disc_type must be 1, 2 or 3");
  if (es_order && disc_type != 3)
    throw ConfigError("es_order only applies to disc_type 3");
  if (q != 0.0 && disc_type != 3) throw ConfigError("q only applies to disc_type 3");
  discretisation().validate();
  tableau_by_name(scheme);
  if (nx && *nx < 1) throw ConfigError("nx must be positive");
  if (ny && spec.dim == 1) throw ConfigError("ny given for the 1D problem " + problem);
  if (ny && *ny < 1) throw ConfigError("ny must be positive");
  if (!(helmholtz_tol > 0.0)) throw ConfigError("helmholtz_tol must be positive");
  step_controls().validate();
  for (double t : snapshot_times)
    if (!(t >= 0.0 && t <= resolved_t_final()))
      throw ConfigError("snapshot time " + format_double(t) + " outside [0, t_final]");
  for (int n : grids)
    if (n < 1) throw ConfigError("grid sizes must be positive");
  if (reference_n && *reference_n < 1) throw ConfigError("reference grid size must be positive");
}

ProblemSpec RunConfig::problem_spec() const { return problem_by_name(problem, eps.value_or(1.0)); }

int RunConfig::resolved_nx() const {
  if (nx) return *nx;
  return problem_spec().dim == 1 ? 200 : 50;
}

int RunConfig::resolved_ny() const { return ny.value_or(resolved_nx()); }

double RunConfig::resolved_t_final() const {
  return t_final.value_or(problem_spec().default_t_final);
}

DiscretisationType RunConfig::discretisation() const {
  DiscretisationType d;
  d.kind = static_cast<SpaceKind>(disc_type);
  d.order = es_order.value_or(1);
  d.q = q;
  return d;
}

SchemeOptions RunConfig::scheme_options() const {
  SchemeOptions o;
  o.disc = discretisation();
  o.nonlinear_pressure = nonlinear_pressure;
  o.helmholtz_tol = helmholtz_tol;
  return o;
}

StepControls RunConfig::step_controls() const {
  StepControls c;
  c.cfl = cfl;
  c.t_final = resolved_t_final();
  c.dt_cap = dt_cap;
  c.rho0 = rho0;
  return c;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> rows{
      {"problem", c.problem},
      {"disc_type", std::to_string(c.disc_type)},
      {"q", format_double(c.q)},
      {"scheme", c.scheme},
      {"eps", format_double(c.eps.value_or(0.0))},
      {"cfl", format_double(c.cfl)},
      {"nx", std::to_string(c.resolved_nx())},
      {"t_final", format_double(c.resolved_t_final())},
      {"out_dir", c.out_dir.string()},
      {"helmholtz_tol", format_double(c.helmholtz_tol)},
      {"nonlinear_pressure", c.nonlinear_pressure ? "true" : "false"},
  };
  if (c.es_order) rows.emplace_back("es_order", std::to_string(*c.es_order));
  if (c.problem_spec().dim == 2) rows.emplace_back("ny", std::to_string(c.resolved_ny()));
  if (!c.snapshot_times.empty()) rows.emplace_back("snapshot_times", join_doubles(c.snapshot_times));
  if (c.dt_cap) rows.emplace_back("dt_cap", format_double(*c.dt_cap));
  if (c.rho0) rows.emplace_back("rho0", format_double(*c.rho0));
  if (!c.grids.empty()) rows.emplace_back("grids", join_ints(c.grids));
  if (c.reference_n) rows.emplace_back("reference_n", std::to_string(*c.reference_n));
  rows.emplace_back("code_version", code_version());
  return rows;
}

int run_single(const RunConfig& config) {
  config.validate();
  const ProblemSpec spec = config.problem_spec();
  const PeriodicGrid grid = spec.make_grid(config.resolved_nx(), config.resolved_ny());
  const Field initial = sample_initial_condition(spec.ic, grid);

  std::filesystem::create_directories(config.out_dir);
  write_meta(config);

  auto diag = open_output(config.out_dir / "diagnostics.csv");
  diag << "t,entropy,kinetic_energy,potential_energy\n";
  std::ofstream vortex_ke;
  const bool vortex = spec.background_u1 != 0.0;
  if (vortex) {
    vortex_ke = open_output(config.out_dir / "gresho_ke.csv");
    vortex_ke << "t,perturbation_ke\n";
  }

  RunSinks sinks;
  sinks.on_diagnostics = [&](const DiagnosticsRow& r) {
    diag << csv_number(r.t) << ',' << csv_number(r.entropy) << ',' << csv_number(r.ke) << ','
         << csv_number(r.pe) << '\n';
  };
  if (vortex)
    sinks.on_state = [&](double t, const Field& f) {
      vortex_ke << csv_number(t) << ','
                << csv_number(gresho_diagnostics(f, spec.params, spec.background_u1).perturbation_ke)
                << '\n';
    };
  sinks.snapshot_times = config.snapshot_times;
  sinks.on_snapshot = [&](double requested, double, const Field& f) {
    write_field(config.out_dir / ("snapshot_" + format_double(requested) + ".csv"), f);
  };

  try {
    const RunResult result = run(initial, spec.params, tableau_by_name(config.scheme),
                                 config.scheme_options(), config.step_controls(), sinks);
    if (vortex) {
      const auto d = gresho_diagnostics(result.final_state, spec.params, spec.background_u1);
      auto out = open_output(config.out_dir / "mach_ratio.csv");
      out << "x1,x2,mach_ratio\n";
      for (int c = 0; c < grid.cells(); ++c)
        out << csv_number(grid.center(c, 0)) << ',' << csv_number(grid.center(c, 1)) << ','
            << csv_number(d.mach_ratio[c]) << '\n';
    }
  } catch (const BlowUpError& e) {
    diag.flush();
    write_field(config.out_dir / "blowup_state.csv", e.last_valid());
    std::cerr << "lowmach: " << e.what() << '\n';
    return kExitBlowUp;
  }
  if (!diag.flush()) throw std::runtime_error("failed writing diagnostics.csv");
  return kExitOk;
}

EocTable run_eoc(const RunConfig& config) {
  config.validate();
  if (config.grids.empty()) throw ConfigError("convergence study needs at least one grid");
  if (!config.reference_n) throw ConfigError("convergence study needs a reference grid size");
  const int ref_n = *config.reference_n;
  for (int n : config.grids)
    if (ref_n % n != 0)
      throw ConfigError("reference N = " + std::to_string(ref_n) + " is not divisible by N = " +
                        std::to_string(n));
  std::vector<int> grids = config.grids;
  std::sort(grids.begin(), grids.end());

  const ProblemSpec spec = config.problem_spec();
  const DoubleTableau tableau = tableau_by_name(config.scheme);
  auto solve_on = [&](int n) {
    const PeriodicGrid grid = spec.make_grid(n, n);
    const Field initial = sample_initial_condition(spec.ic, grid);
    return run(initial, spec.params, tableau, config.scheme_options(), config.step_controls())
        .final_state;
  };

  const Field reference = solve_on(ref_n);
  std::vector<Variable> variables{Variable::Rho, Variable::U1};
  if (spec.dim == 2) variables.push_back(Variable::U2);

  std::vector<ErrorSample> samples;
  for (int n : grids) {
    const Field coarse = solve_on(n);
    samples.push_back({n, coarse.grid.dx(0), l2_error(coarse, reference, variables)});
  }
  const EocTable table = compute_eoc(samples);

  std::filesystem::create_directories(config.out_dir);
  write_meta(config);
  auto out = open_output(config.out_dir / "eoc.csv");
  out << "N,dx,err_rho,eoc_rho,err_u1,eoc_u1" << (spec.dim == 2 ? ",err_u2,eoc_u2" : "") << '\n';
  for (const EocRow& row : table) {
    out << row.n << ',' << csv_number(row.dx);
    for (std::size_t v = 0; v < row.error.size(); ++v) {
      out << ',' << csv_number(row.error[v]) << ',';
      if (v < row.eoc.size() && row.eoc[v]) out << csv_number(*row.eoc[v]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing eoc.csv");
  return table;
}

}  // namespace lowmach
