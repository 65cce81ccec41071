#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lowmach/imex.hpp"
#include "lowmach/problems.hpp"
#include "lowmach/spatial.hpp"
#include "lowmach/stepper.hpp"

namespace lowmach {

/// Every knob of a simulator run. Unset optionals fall back to problem defaults.
struct RunConfig {
  std::string problem = "standard_periodic";
  int disc_type = 2;
  /// Only meaningful for type 3; setting it for another type is an error.
  std::optional<int> es_order;
  double q = 0.0;
  std::string scheme = "ars111";
  std::optional<double> eps;
  double cfl = 0.5;
  std::optional<int> nx;
  std::optional<int> ny;
  std::optional<double> t_final;
  std::vector<double> snapshot_times;
  std::filesystem::path out_dir = "out";
  double helmholtz_tol = 1e-12;
  bool nonlinear_pressure = false;
  std::optional<double> dt_cap;
  std::optional<double> rho0;
  /// Convergence study: study grids and reference grid size.
  std::vector<int> grids;
  std::optional<int> reference_n;

  void validate() const;

  ProblemSpec problem_spec() const;
  int resolved_nx() const;
  int resolved_ny() const;
  double resolved_t_final() const;
  DiscretisationType discretisation() const;
  SchemeOptions scheme_options() const;
  StepControls step_controls() const;
};

/// Parses a flat `key = value` file (also `key,value`, as written to
/// run_meta.csv). `#` starts a comment. Unknown keys and malformed values
/// throw ConfigError naming the file and line.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Sets one key from its textual value. Throws ConfigError on unknown keys or
/// malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Thrown by parse_config for --help; what() is the usage text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses command-line flags (argv[0] excluded). `--config FILE` is read first,
/// flags override its values. The result is validated.
RunConfig parse_config(const std::vector<std::string>& args);

/// key,value rows of every setting plus the code version.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Exit codes of the simulator.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBlowUp = 2;

/// Runs one simulation and writes diagnostics.csv, snapshot_<t>.csv and
/// run_meta.csv into config.out_dir. Returns kExitOk or kExitBlowUp; I/O and
/// configuration problems throw.
int run_single(const RunConfig& config);

/// Runs the reference grid and every study grid, then writes eoc.csv.
EocTable run_eoc(const RunConfig& config);

const char* code_version();

}  // namespace lowmach
