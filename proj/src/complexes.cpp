#include "holonomy2/complexes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace holonomy2 {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

double vec_dist(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  return (a - b).lpNorm<Eigen::Infinity>();
}

void check_invertible(const Mat& m, double eps_inv, const char* what) {
  if (m.rows() == 0) return;  // zero-dimensional fibers are vacuously invertible
  const double det = m.determinant();
  if (std::abs(det) <= eps_inv) {
    std::ostringstream os;
    os << what << ": |det| = " << std::abs(det) << " <= " << eps_inv;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

Mat TwoTermComplex::boundary_at(const Vec& x) const {
  Mat d = boundary ? boundary(x) : Mat::Zero(dim_E, dim_C);
  if (d.rows() != dim_E || d.cols() != dim_C)
    throw std::invalid_argument("TwoTermComplex: boundary(x) has wrong shape");
  return d;
}

ComplexPtr make_constant_complex(const Mat& boundary) {
  auto cx = std::make_shared<TwoTermComplex>();
  cx->dim_E = static_cast<int>(boundary.rows());
  cx->dim_C = static_cast<int>(boundary.cols());
  Mat d = boundary;
  cx->boundary = [d](const Vec&) { return d; };
  return cx;
}

ChainMap ChainMap::checked(ComplexPtr cx, Vec x, Vec y, Mat A_C, Mat A_E,
                           double tol_chain, double eps_inv) {
  require(cx != nullptr, "ChainMap: null complex");
  require(A_C.rows() == cx->dim_C && A_C.cols() == cx->dim_C, "ChainMap: A_C shape");
  require(A_E.rows() == cx->dim_E && A_E.cols() == cx->dim_E, "ChainMap: A_E shape");
  ChainMap f{std::move(cx), std::move(x), std::move(y), std::move(A_C), std::move(A_E)};
  check_invertible(f.A_C, eps_inv, "ChainMap A_C");
  check_invertible(f.A_E, eps_inv, "ChainMap A_E");
  const double r = f.chain_residual();
  if (r > tol_chain) {
    std::ostringstream os;
    os << "ChainMap: chain condition residual " << r << " exceeds " << tol_chain;
    throw std::invalid_argument(os.str());
  }
  return f;
}

ChainMap ChainMap::identity(ComplexPtr cx, const Vec& x) {
  require(cx != nullptr, "ChainMap: null complex");
  ChainMap f;
  f.A_C = Mat::Identity(cx->dim_C, cx->dim_C);
  f.A_E = Mat::Identity(cx->dim_E, cx->dim_E);
  f.complex = std::move(cx);
  f.x = x;
  f.y = x;
  return f;
}

double ChainMap::chain_residual() const {
  const Mat lhs = A_E * complex->boundary_at(x);
  const Mat rhs = complex->boundary_at(y) * A_C;
  if (lhs.size() == 0) return 0.0;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

bool ChainMap::is_identity(double tol) const {
  const Mat dc = A_C - Mat::Identity(A_C.rows(), A_C.cols());
  const Mat de = A_E - Mat::Identity(A_E.rows(), A_E.cols());
  const double r = std::max(dc.size() ? dc.cwiseAbs().maxCoeff() : 0.0,
                            de.size() ? de.cwiseAbs().maxCoeff() : 0.0);
  return r <= tol && vec_dist(x, y) <= tol;
}

ChainHomotopy ChainHomotopy::checked(ChainMap source, ChainMap target, Mat phi,
                                     double tol_chain) {
  require(source.complex != nullptr && source.complex == target.complex,
          "ChainHomotopy: mismatched complexes");
  require(vec_dist(source.x, target.x) == 0.0 && vec_dist(source.y, target.y) == 0.0,
          "ChainHomotopy: source and target must share endpoints");
  require(phi.rows() == source.complex->dim_C && phi.cols() == source.complex->dim_E,
          "ChainHomotopy: phi shape");
  ChainHomotopy h{std::move(source), std::move(target), std::move(phi)};
  const double r = h.homotopy_residual();
  if (r > tol_chain) {
    std::ostringstream os;
    os << "ChainHomotopy: defining-equation residual " << r << " exceeds " << tol_chain;
    throw std::invalid_argument(os.str());
  }
  return h;
}

ChainHomotopy ChainHomotopy::vertical_unit(const ChainMap& at) {
  ChainHomotopy h;
  h.source = at;
  h.target = at;
  h.phi = Mat::Zero(at.complex->dim_C, at.complex->dim_E);
  return h;
}

double ChainHomotopy::homotopy_residual() const {
  const Mat dx = source.complex->boundary_at(source.x);
  const Mat dy = source.complex->boundary_at(source.y);
  const Mat rc = (target.A_C - source.A_C) - phi * dx;
  const Mat re = (target.A_E - source.A_E) - dy * phi;
  const double a = rc.size() ? rc.cwiseAbs().maxCoeff() : 0.0;
  const double b = re.size() ? re.cwiseAbs().maxCoeff() : 0.0;
  return std::max(a, b);
}

ChainMap compose_chain_maps(const ChainMap& g, const ChainMap& f, double tol) {
  require(f.complex == g.complex, "compose_chain_maps: different complexes");
  if (vec_dist(f.y, g.x) > tol)
    throw std::invalid_argument("compose_chain_maps: endpoint mismatch");
  return ChainMap::checked(f.complex, f.x, g.y, g.A_C * f.A_C, g.A_E * f.A_E, tol);
}

ChainMap invert_chain_map(const ChainMap& f, double eps_inv) {
  check_invertible(f.A_C, eps_inv, "invert_chain_map A_C");
  check_invertible(f.A_E, eps_inv, "invert_chain_map A_E");
  ChainMap g;
  g.complex = f.complex;
  g.x = f.y;
  g.y = f.x;
  g.A_C = f.A_C.size() ? f.A_C.inverse().eval() : f.A_C;
  g.A_E = f.A_E.size() ? f.A_E.inverse().eval() : f.A_E;
  return g;
}

ChainHomotopy vcomp(const ChainHomotopy& psi, const ChainHomotopy& phi, double tol) {
  const double mid =
      std::max((psi.source.A_C - phi.target.A_C).cwiseAbs().maxCoeff(),
               (psi.source.A_E - phi.target.A_E).cwiseAbs().maxCoeff());
  if (mid > tol)
    throw std::invalid_argument("vcomp: middle chain maps disagree beyond tolerance");
  ChainHomotopy out;
  out.source = phi.source;
  out.target = psi.target;
  out.phi = psi.phi + phi.phi;
  return out;
}

ChainHomotopy hcomp(const ChainHomotopy& phi2, const ChainHomotopy& phi1, double tol) {
  if (vec_dist(phi1.source.y, phi2.source.x) > tol)
    throw std::invalid_argument("hcomp: endpoint chaining mismatch");
  ChainHomotopy out;
  out.source = compose_chain_maps(phi2.source, phi1.source, std::max(tol, kTolChain));
  out.target = compose_chain_maps(phi2.target, phi1.target, std::max(tol, kTolChain));
  out.phi = phi2.phi * phi1.source.A_E + phi2.target.A_C * phi1.phi;
  return out;
}

ChainHomotopy vinv(const ChainHomotopy& phi) {
  ChainHomotopy out;
  out.source = phi.target;
  out.target = phi.source;
  out.phi = -phi.phi;
  return out;
}

ChainHomotopy hinv(const ChainHomotopy& phi, double eps_inv) {
  ChainHomotopy out;
  out.source = invert_chain_map(phi.source, eps_inv);
  out.target = invert_chain_map(phi.target, eps_inv);
  out.phi = -out.target.A_C * phi.phi * out.source.A_E;
  return out;
}

Vec KernelArrow::target() const {
  return e + complex->boundary_at(base) * c;
}

KernelArrow kernel_mult(const KernelArrow& g2, const KernelArrow& g1, double tol) {
  require(g1.complex == g2.complex, "kernel_mult: different complexes");
  if ((g1.base - g2.base).lpNorm<Eigen::Infinity>() > tol)
    throw std::invalid_argument("kernel_mult: arrows live in different fibers");
  if ((g2.source() - g1.target()).lpNorm<Eigen::Infinity>() > tol)
    throw std::invalid_argument("kernel_mult: arrows not composable");
  return KernelArrow{g1.complex, g1.base, g1.c + g2.c, g1.e};
}

KernelArrow kernel_inv(const KernelArrow& g) {
  return KernelArrow{g.complex, g.base, -g.c, g.target()};
}

KernelArrow integrate_kernel_path(const std::vector<KernelArrow>& samples, double tol) {
  if (samples.empty())
    throw std::invalid_argument("integrate_kernel_path: empty grid");
  std::vector<Vec> cs;
  cs.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.complex != samples[0].complex ||
        (s.base - samples[0].base).lpNorm<Eigen::Infinity>() > tol)
      throw std::invalid_argument("integrate_kernel_path: samples mix fibers");
    cs.push_back(s.c);
  }
  return KernelArrow{samples[0].complex, samples[0].base, integrate_samples(cs),
                     samples[0].e};
}

}  // namespace holonomy2
