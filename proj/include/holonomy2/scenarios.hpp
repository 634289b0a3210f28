#ifndef HOLONOMY2_SCENARIOS_HPP
#define HOLONOMY2_SCENARIOS_HPP

#include "holonomy2/config.hpp"
#include "holonomy2/integrability.hpp"
#include "holonomy2/report.hpp"

namespace holonomy2 {

/// Canonical smooth inputs for a model: a base path p, a second leg q
/// starting at p's target, and two variation directions.
struct ScenarioInputs {
  APath p;
  APath q;
  Vec eta1, eta2;
};

ScenarioInputs scenario_inputs(const ModelBundle& bundle, int N, double tol);

/// Path generator specs: "constant:v1,..,vr" | "constant:auto" | "unit" |
/// "file:PATH".
APath build_path(const ModelBundle& bundle, const std::string& spec,
                 const RunConfig& cfg);
/// Homotopy generator specs: "sin:v1,..,vr" | "sin:auto" (variation over the
/// configured base path) | "sphere:full" | "sphere:half" | "thin" |
/// "file:PATH".
AHomotopy build_homotopy(const ModelBundle& bundle, const std::string& spec,
                         const RunConfig& cfg);

// Subcommand drivers; each returns a finalized report (wall clock excluded).
Report run_validate_model(const RunConfig& cfg);
Report run_transport(const RunConfig& cfg);
Report run_holonomy(const RunConfig& cfg);
Report run_laws(const RunConfig& cfg);
Report run_truncate_check(const RunConfig& cfg);
Report run_periods(const RunConfig& cfg);
Report run_scenario(const RunConfig& cfg);
Report run_convergence(const RunConfig& cfg);

}  // namespace holonomy2

#endif
