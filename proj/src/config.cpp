#include "holonomy2/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace holonomy2 {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": '" + v +
                                "'");
  }
}

int to_int(const std::string& v, const std::string& key) {
  const double d = to_double(v, key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw std::invalid_argument("config: " + key + " must be an integer");
  return i;
}

}  // namespace

void RunConfig::validate() const {
  if (N < 8 || N % 2 != 0 || M < 8 || M % 2 != 0)
    throw std::invalid_argument("config: N and M must be even and >= 8");
  if (refine < 2) throw std::invalid_argument("config: refine must be >= 2");
  for (const auto& [name, v] :
       std::vector<std::pair<std::string, double>>{{"tol_path", tol_path},
                                                   {"tol_transport", tol_transport},
                                                   {"tol_hol", tol_hol},
                                                   {"tol_thin", tol_thin},
                                                   {"tol_model", tol_model},
                                                   {"h_fd", h_fd}})
    if (v <= 0.0) throw std::invalid_argument("config: " + name + " must be positive");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("model.name", model_name);
  for (const auto& [k, v] : model_params) out.emplace_back("model.param." + k, num(v));
  out.emplace_back("grids.N", std::to_string(N));
  out.emplace_back("grids.M", std::to_string(M));
  out.emplace_back("grids.refine", std::to_string(refine));
  out.emplace_back("tolerances.tol_path", num(tol_path));
  out.emplace_back("tolerances.tol_transport", num(tol_transport));
  out.emplace_back("tolerances.tol_hol", num(tol_hol));
  out.emplace_back("tolerances.tol_thin", num(tol_thin));
  out.emplace_back("tolerances.tol_model", num(tol_model));
  out.emplace_back("tolerances.h_fd", num(h_fd));
  if (!input_path.empty()) out.emplace_back("paths.input", input_path);
  out.emplace_back("paths.path", path_spec);
  out.emplace_back("paths.variation", variation_spec);
  out.emplace_back("paths.spheres", spheres);
  out.emplace_back("paths.op", op);
  out.emplace_back("paths.grid_list", grid_list);
  out.emplace_back("paths.s0", std::to_string(s0));
  out.emplace_back("paths.samples", std::to_string(samples));
  return out;
}

void apply_config_entry(RunConfig& cfg, const std::string& section,
                        const std::string& key, const std::string& value) {
  const std::string where = section + "." + key;
  if (section == "meta") {
    if (key == "schema_version") {
      if (to_int(value, where) != 1)
        throw std::invalid_argument("config: unsupported schema_version " + value);
      return;
    }
  } else if (section == "model") {
    if (key == "name") {
      cfg.model_name = value;
      return;
    }
    if (key.rfind("param.", 0) == 0) {
      cfg.model_params[key.substr(6)] = to_double(value, where);
      return;
    }
  } else if (section == "grids") {
    if (key == "N") {
      cfg.N = to_int(value, where);
      return;
    }
    if (key == "M") {
      cfg.M = to_int(value, where);
      return;
    }
    if (key == "refine") {
      cfg.refine = to_int(value, where);
      return;
    }
  } else if (section == "tolerances") {
    double* slot = key == "tol_path"        ? &cfg.tol_path
                   : key == "tol_transport" ? &cfg.tol_transport
                   : key == "tol_hol"       ? &cfg.tol_hol
                   : key == "tol_thin"      ? &cfg.tol_thin
                   : key == "tol_model"     ? &cfg.tol_model
                   : key == "h_fd"          ? &cfg.h_fd
                                            : nullptr;
    if (slot) {
      *slot = to_double(value, where);
      return;
    }
  } else if (section == "paths") {
    if (key == "input") {
      cfg.input_path = value;
      return;
    }
    if (key == "report") {
      cfg.report_path = value;
      return;
    }
    if (key == "path") {
      cfg.path_spec = value;
      return;
    }
    if (key == "variation") {
      cfg.variation_spec = value;
      return;
    }
    if (key == "spheres") {
      cfg.spheres = value;
      return;
    }
    if (key == "op") {
      cfg.op = value;
      return;
    }
    if (key == "grid_list") {
      cfg.grid_list = value;
      return;
    }
    if (key == "s0") {
      cfg.s0 = to_int(value, where);
      return;
    }
    if (key == "samples") {
      cfg.samples = to_int(value, where);
      return;
    }
  }
  throw std::invalid_argument("config: unknown key " + where);
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty()) {
      std::ostringstream os;
      os << "config: parse error at " << path << ":" << lineno;
      throw std::invalid_argument(os.str());
    }
    apply_config_entry(cfg, section, trim(line.substr(0, eq)),
                       trim(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace holonomy2
