#include "holonomy2/report.hpp"

#include <fstream>
#include <sstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace holonomy2 {

void Report::add_result(const std::string& key, double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  results.emplace_back(key, os.str());
}

void Report::add_result(const std::string& key, const std::string& value) {
  results.emplace_back(key, value);
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Report::finalize() {
  if (verdict.empty()) verdict = all_pass() ? "pass" : "fail";
}

void print_human(const Report& report, std::ostream& os) {
  os << "== " << report.subcommand << " ==\n";
  for (const auto& [k, v] : report.config_echo) os << "  " << k << " = " << v << "\n";
  os << std::scientific << std::setprecision(3);
  for (const auto& [k, v] : report.results) os << "  " << k << ": " << v << "\n";
  for (const auto& c : report.checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  residual=" << c.residual
       << "  tol=" << c.tolerance;
    if (c.error_estimate >= 0.0) os << "  err_est=" << c.error_estimate;
    os << "\n";
  }
  os << "verdict: " << report.verdict << "\n";
  os << std::fixed << std::setprecision(3) << "wall: " << report.wall_seconds
     << " s\n";
}

std::string machine_report(const Report& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["subcommand"] = report.subcommand;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.config_echo) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json res = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.results) res[k] = v;
  j["results"] = res;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["residual"] = c.residual;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    if (c.error_estimate >= 0.0) jc["error_estimate"] = c.error_estimate;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["verdict"] = report.verdict;
  return j.dump(2) + "\n";
}

void write_machine_report(const Report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  out << machine_report(report);
}

}  // namespace holonomy2
