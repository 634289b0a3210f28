#ifndef HOLONOMY2_CONFIG_HPP
#define HOLONOMY2_CONFIG_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "holonomy2/holonomy.hpp"

namespace holonomy2 {

/// Run configuration shared by all CLI subcommands. Flat, typed key-value
/// sections in the config file: [model], [grids], [tolerances], [paths].
struct RunConfig {
  std::string model_name = "so3_string";
  std::map<std::string, double> model_params;

  int N = kDefaultN;
  int M = kDefaultM;
  int refine = 2;  // grid-refinement factor for error estimates

  double tol_path = kTolPath;
  double tol_transport = kTolTransport;
  double tol_hol = kTolHol;
  double tol_thin = kTolThin;
  double tol_model = kTolModel;
  double h_fd = kDefaultFdStep;

  std::string input_path;
  std::string report_path;

  // subcommand-specific arguments
  std::string path_spec = "constant:auto";
  std::string variation_spec = "sin:auto";
  std::string spheres = "full,half";
  std::string op = "transport";
  std::string grid_list = "8,16,32,64";
  int s0 = -1;  // curvature-check s-line; -1 = middle
  int samples = 25;

  /// Throws std::invalid_argument on violated invariants (grid parity,
  /// nonpositive tolerances).
  void validate() const;
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Parses the INI-style config file; unknown keys are an error.
RunConfig load_config_file(const std::string& path);
/// Applies one "section.key=value" assignment (CLI overrides).
void apply_config_entry(RunConfig& cfg, const std::string& section,
                        const std::string& key, const std::string& value);

}  // namespace holonomy2

#endif
