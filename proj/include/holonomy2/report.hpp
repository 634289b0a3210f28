#ifndef HOLONOMY2_REPORT_HPP
#define HOLONOMY2_REPORT_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace holonomy2 {

inline constexpr int kReportSchemaVersion = 1;

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double error_estimate = -1.0;  // < 0 means not reported

  static Check of(std::string name, double residual, double tolerance,
                  double error_estimate = -1.0) {
    return Check{std::move(name), residual, tolerance, residual <= tolerance,
                 error_estimate};
  }
  /// pass iff observed >= threshold, encoded as residual = max(0, threshold -
  /// observed) against tolerance 0 so that pass <=> residual <= tolerance.
  static Check at_least(std::string name, double observed, double threshold) {
    return Check{std::move(name), std::max(0.0, threshold - observed), 0.0,
                 observed >= threshold, -1.0};
  }
};

struct Report {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<std::pair<std::string, std::string>> results;  // named values
  std::vector<Check> checks;

  void add_result(const std::string& key, double value);
  void add_result(const std::string& key, const std::string& value);
  std::string verdict;  // filled by finalize() unless set explicitly
  double wall_seconds = 0.0;

  bool all_pass() const;
  /// Sets verdict to pass/fail from the checks when not already set.
  void finalize();
};

/// Human-readable rendering (one line per check, verdict, wall clock).
void print_human(const Report& report, std::ostream& os);

/// Machine rendering: deterministic JSON with a stable field schema;
/// excludes wall-clock fields.
std::string machine_report(const Report& report);

/// Writes machine_report(report) to the given path.
void write_machine_report(const Report& report, const std::string& path);

}  // namespace holonomy2

#endif
