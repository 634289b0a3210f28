#include "holonomy2/serialization.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace holonomy2 {

namespace {

void put(std::ostream& os, double v) { os << ' ' << v; }

struct Header {
  bool has_s = false;
  int m = 0, r = 0;
};

Header parse_header(const std::string& line) {
  std::istringstream is(line);
  std::string tok;
  is >> tok;
  if (tok != "#") throw std::invalid_argument("grid file: missing '#' header");
  Header h;
  auto dim_of = [](const std::string& t, const std::string& name) -> int {
    if (t.rfind(name + "(", 0) != 0 || t.back() != ')')
      throw std::invalid_argument("grid file: bad header token '" + t + "'");
    return std::stoi(t.substr(name.size() + 1, t.size() - name.size() - 2));
  };
  is >> tok;
  if (tok != "t") throw std::invalid_argument("grid file: header must start with t");
  is >> tok;
  if (tok == "s") {
    h.has_s = true;
    is >> tok;
  }
  h.m = dim_of(tok, "gamma");
  is >> tok;
  h.r = dim_of(tok, "a");
  if (h.has_s) {
    is >> tok;
    if (dim_of(tok, "b") != h.r)
      throw std::invalid_argument("grid file: a and b ranks disagree");
  }
  return h;
}

std::vector<std::vector<double>> read_rows(std::istream& is, int width) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (row.empty()) continue;
    if (static_cast<int>(row.size()) != width)
      throw std::invalid_argument("grid file: wrong column count");
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw std::invalid_argument("grid file: too few rows");
  return rows;
}

}  // namespace

void write_path(const APath& p, std::ostream& os) {
  os << std::setprecision(17);
  os << "# t gamma(" << p.model->base_dim << ") a(" << p.model->rank << ")\n";
  for (int i = 0; i <= p.N; ++i) {
    os << static_cast<double>(i) / p.N;
    for (int k = 0; k < p.model->base_dim; ++k) put(os, p.gamma[i][k]);
    for (int k = 0; k < p.model->rank; ++k) put(os, p.a[i][k]);
    os << '\n';
  }
}

void write_homotopy(const AHomotopy& h, std::ostream& os) {
  os << std::setprecision(17);
  os << "# t s gamma(" << h.model->base_dim << ") a(" << h.model->rank << ") b("
     << h.model->rank << ")\n";
  for (int j = 0; j <= h.M; ++j)
    for (int i = 0; i <= h.N; ++i) {
      os << static_cast<double>(i) / h.N;
      put(os, static_cast<double>(j) / h.M);
      for (int k = 0; k < h.model->base_dim; ++k) put(os, h.gamma[j][i][k]);
      for (int k = 0; k < h.model->rank; ++k) put(os, h.a[j][i][k]);
      for (int k = 0; k < h.model->rank; ++k) put(os, h.b[j][i][k]);
      os << '\n';
    }
}

APath read_path(ModelPtr model, std::istream& is, double tol) {
  std::string first;
  if (!std::getline(is, first)) throw std::invalid_argument("grid file: empty");
  const Header h = parse_header(first);
  if (h.has_s) throw std::invalid_argument("grid file: expected a path, found s column");
  if (h.m != model->base_dim || h.r != model->rank)
    throw std::invalid_argument("grid file: dimensions do not match the model");
  const auto rows = read_rows(is, 1 + h.m + h.r);
  std::vector<Vec> gamma, a;
  for (const auto& row : rows) {
    gamma.push_back(Eigen::Map<const Vec>(row.data() + 1, h.m));
    a.push_back(Eigen::Map<const Vec>(row.data() + 1 + h.m, h.r));
  }
  return APath::from_data(std::move(model), std::move(gamma), std::move(a), tol);
}

AHomotopy read_homotopy(ModelPtr model, std::istream& is, double tol) {
  std::string first;
  if (!std::getline(is, first)) throw std::invalid_argument("grid file: empty");
  const Header h = parse_header(first);
  if (!h.has_s)
    throw std::invalid_argument("grid file: expected a homotopy, no s column");
  if (h.m != model->base_dim || h.r != model->rank)
    throw std::invalid_argument("grid file: dimensions do not match the model");
  const auto rows = read_rows(is, 2 + h.m + 2 * h.r);
  // the t column restarts at 0 on each s-row
  int nodes_per_row = 0;
  for (size_t k = 1; k < rows.size(); ++k)
    if (rows[k][0] <= rows[k - 1][0]) {
      nodes_per_row = static_cast<int>(k);
      break;
    }
  if (nodes_per_row < 3 || rows.size() % nodes_per_row != 0)
    throw std::invalid_argument("grid file: inconsistent homotopy grid");
  const int rows_s = static_cast<int>(rows.size()) / nodes_per_row;
  std::vector<std::vector<Vec>> gamma(rows_s), a(rows_s), b(rows_s);
  for (int j = 0; j < rows_s; ++j)
    for (int i = 0; i < nodes_per_row; ++i) {
      const auto& row = rows[j * nodes_per_row + i];
      gamma[j].push_back(Eigen::Map<const Vec>(row.data() + 2, h.m));
      a[j].push_back(Eigen::Map<const Vec>(row.data() + 2 + h.m, h.r));
      b[j].push_back(Eigen::Map<const Vec>(row.data() + 2 + h.m + h.r, h.r));
    }
  // boundary b entries must be exactly zero; snap parse-level dust only
  for (auto& brow : b) {
    if (brow.front().lpNorm<Eigen::Infinity>() <= 1e-15) brow.front().setZero();
    if (brow.back().lpNorm<Eigen::Infinity>() <= 1e-15) brow.back().setZero();
  }
  return AHomotopy::from_data(std::move(model), std::move(gamma), std::move(a),
                              std::move(b), tol);
}

void write_path_file(const APath& p, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_path(p, os);
}

void write_homotopy_file(const AHomotopy& h, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_homotopy(h, os);
}

APath read_path_file(ModelPtr model, const std::string& path, double tol) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open " + path);
  return read_path(std::move(model), is, tol);
}

AHomotopy read_homotopy_file(ModelPtr model, const std::string& path, double tol) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open " + path);
  return read_homotopy(std::move(model), is, tol);
}

}  // namespace holonomy2
