#include "holonomy2/cli.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "holonomy2/scenarios.hpp"

namespace holonomy2 {

namespace {

struct SubcommandSpec {
  CLI::App* app = nullptr;
  std::string config_file;
  std::vector<std::string> params;
  std::map<std::string, std::string> overrides;  // section.key -> value
};

void add_common_options(SubcommandSpec& sc) {
  auto* app = sc.app;
  app->add_option("--config", sc.config_file, "config file ([model]/[grids]/...)");
  auto bind = [&sc, app](const std::string& flag, const std::string& key,
                         const std::string& help) {
    app->add_option_function<std::string>(
        flag, [&sc, key](const std::string& v) { sc.overrides[key] = v; }, help);
  };
  bind("--name", "model.name", "built-in model name");
  bind("--N", "grids.N", "t-grid intervals (even, >= 8)");
  bind("--M", "grids.M", "s-grid intervals (even, >= 8)");
  bind("--refine", "grids.refine", "refinement factor for error estimates");
  bind("--tol-path", "tolerances.tol_path", "A-path residual tolerance");
  bind("--tol-transport", "tolerances.tol_transport", "transport tolerance");
  bind("--tol-hol", "tolerances.tol_hol", "holonomy tolerance");
  bind("--tol-thin", "tolerances.tol_thin", "thinness tolerance");
  bind("--tol-model", "tolerances.tol_model", "model validation tolerance");
  bind("--h-fd", "tolerances.h_fd", "finite-difference step");
  bind("--report", "paths.report", "write the machine report to this file");
  bind("--input", "paths.input", "input grid file");
  bind("--path", "paths.path", "path spec (constant:.., unit, file:..)");
  bind("--variation", "paths.variation",
       "homotopy spec (sin:.., thin, sphere:full|half, file:..)");
  bind("--spheres", "paths.spheres", "comma list of sphere covers (full,half)");
  bind("--op", "paths.op", "convergence target: transport | holonomy");
  bind("--grids", "paths.grid_list", "comma list of grid sizes");
  bind("--s0", "paths.s0", "interior s-line for the curvature check");
  bind("--samples", "paths.samples", "validation sample count");
  app->add_option("--param", sc.params, "model parameter key=value")
      ->take_all();
}

RunConfig resolve_config(const SubcommandSpec& sc) {
  RunConfig cfg;
  if (!sc.config_file.empty()) cfg = load_config_file(sc.config_file);
  for (const auto& [skey, value] : sc.overrides) {
    const auto dot = skey.find('.');
    apply_config_entry(cfg, skey.substr(0, dot), skey.substr(dot + 1), value);
  }
  for (const auto& kv : sc.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    apply_config_entry(cfg, "model", "param." + kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"holonomy2: holonomy of 2-term Lie algebroid actions"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> names = {
      {"validate-model", "check the algebroid and action axioms numerically"},
      {"transport", "parallel transport along a path"},
      {"holonomy", "double-integral holonomy of a homotopy"},
      {"laws", "holonomy law suite on generated homotopies"},
      {"truncate-check", "1-truncation and equivalence checks"},
      {"periods", "sphere periods and the integrability verdict"},
      {"scenario", "full pipeline for one built-in model"},
      {"convergence", "empirical convergence orders"},
  };
  std::vector<SubcommandSpec> specs(names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    specs[i].app = app.add_subcommand(names[i].first, names[i].second);
    add_common_options(specs[i]);
  }

  std::vector<const char*> argv;
  argv.push_back("holonomy2");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  RunConfig cfg;
  try {
    for (size_t i = 0; i < names.size(); ++i) {
      if (!specs[i].app->parsed()) continue;
      cfg = resolve_config(specs[i]);
      const std::string& sub = names[i].first;
      if (sub == "validate-model") report = run_validate_model(cfg);
      else if (sub == "transport") report = run_transport(cfg);
      else if (sub == "holonomy") report = run_holonomy(cfg);
      else if (sub == "laws") report = run_laws(cfg);
      else if (sub == "truncate-check") report = run_truncate_check(cfg);
      else if (sub == "periods") report = run_periods(cfg);
      else if (sub == "scenario") report = run_scenario(cfg);
      else if (sub == "convergence") report = run_convergence(cfg);
      break;
    }
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  print_human(report, out);
  if (!cfg.report_path.empty()) {
    try {
      write_machine_report(report, cfg.report_path);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace holonomy2
