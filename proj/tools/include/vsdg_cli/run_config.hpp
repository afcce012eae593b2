#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsdg::cli {

/// Invalid command line or configuration file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { simulate, convergence, conserve, stokes_only };

std::string to_string(Mode m);

struct RunConfig {
  Mode mode = Mode::simulate;
  std::string case_name;
  int kx = 1;
  int kv = 1;
  /// x-cells per axis; the v-mesh gets twice as many so that h_v = h_x.
  std::vector<int> meshes{8};
  double t_final = 0.1;
  /// Empty means "auto": min(CFL bound, dt_coeff * h^(min(k_x,k_v)+1)).
  std::optional<double> dt;
  double dt_coeff = 0.2;
  double cfl_safety = 0.5;
  double penalty = 10.0;
  /// Steps of the conservation audit.
  int steps = 100;
  /// Treat the x-boundary as periodic even when the exact solution is not.
  bool force_periodic = false;
  std::string out_dir = ".";
};

/// Parses argv (and an optional --config key=value file; command-line flags
/// win). Throws ConfigError with the usage text on empty argv and with a
/// diagnostic on invalid values. Returns nullopt when --help was requested
/// (the help text has been printed).
std::optional<RunConfig> parse_config(int argc, const char* const* argv);

/// Checks ranges and cross-field constraints; throws ConfigError.
void validate(const RunConfig& cfg);

/// One "# key=value" line per field.
std::vector<std::string> describe(const RunConfig& cfg);

std::string usage();

}  // namespace vsdg::cli
