#ifndef HOLONOMY2_SERIALIZATION_HPP
#define HOLONOMY2_SERIALIZATION_HPP

#include <iosfwd>
#include <string>

#include "holonomy2/paths.hpp"

namespace holonomy2 {

/// Columnar text format, one grid node per line:
///   paths:      "# t gamma(m) a(r)"       ->  t  gamma...  a...
///   homotopies: "# t s gamma(m) a(r) b(r)" ->  t  s  gamma...  a...  b...
/// Whitespace-separated decimals (round-trip precision), homotopy rows
/// written row-major in (s, t).
void write_path(const APath& p, std::ostream& os);
void write_homotopy(const AHomotopy& h, std::ostream& os);
void write_path_file(const APath& p, const std::string& path);
void write_homotopy_file(const AHomotopy& h, const std::string& path);

APath read_path(ModelPtr model, std::istream& is, double tol = kTolPath);
AHomotopy read_homotopy(ModelPtr model, std::istream& is, double tol = kTolPath);
APath read_path_file(ModelPtr model, const std::string& path, double tol = kTolPath);
AHomotopy read_homotopy_file(ModelPtr model, const std::string& path,
                             double tol = kTolPath);

}  // namespace holonomy2

#endif
