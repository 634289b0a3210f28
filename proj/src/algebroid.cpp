#include "holonomy2/algebroid.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace holonomy2 {

namespace {

double mat_norm(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Directional derivative (v . d/dx) f at x by centered differences along the
/// normalized direction; exact scaling in |v|.
template <typename F>
auto directional_fd(const F& f, const Vec& x, const Vec& v, double h)
    -> decltype(f(x)) {
  const double nv = v.norm();
  if (nv == 0.0) {
    auto z = f(x);
    z.setZero();
    return z;
  }
  const Vec u = v / nv;
  auto plus = f(x + h * u);
  auto minus = f(x - h * u);
  return (nv / (2.0 * h)) * (plus - minus);
}

}  // namespace

bool Box::contains(const Vec& x) const {
  if (x.size() != lo.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

Box Box::shrunk(double margin) const {
  Box b;
  b.lo = lo.array() + margin * (hi - lo).array();
  b.hi = hi.array() - margin * (hi - lo).array();
  return b;
}

Mat AlgebroidModel::anchor_at(const Vec& x) const {
  Mat rho = anchor ? anchor(x) : Mat::Zero(base_dim, rank);
  if (rho.rows() != base_dim || rho.cols() != rank)
    throw std::invalid_argument("AlgebroidModel: anchor(x) has wrong shape");
  return rho;
}

Tensor3 AlgebroidModel::structure_at(const Vec& x) const {
  if (!structure) return Tensor3(rank, Mat::Zero(rank, rank));
  Tensor3 c = structure(x);
  if (static_cast<int>(c.size()) != rank)
    throw std::invalid_argument("AlgebroidModel: structure(x) has wrong shape");
  for (const auto& ck : c)
    if (ck.rows() != rank || ck.cols() != rank)
      throw std::invalid_argument("AlgebroidModel: structure(x) has wrong shape");
  return c;
}

Mat RepUpToHomotopy::gammaE_at(const Vec& x, const Vec& a) const {
  return gammaE ? gammaE(x, a) : Mat::Zero(complex->dim_E, complex->dim_E);
}
Mat RepUpToHomotopy::gammaC_at(const Vec& x, const Vec& a) const {
  return gammaC ? gammaC(x, a) : Mat::Zero(complex->dim_C, complex->dim_C);
}
Mat RepUpToHomotopy::omega_at(const Vec& x, const Vec& a, const Vec& b) const {
  return omega ? omega(x, a, b) : Mat::Zero(complex->dim_C, complex->dim_E);
}

Vec bracket_at(const AlgebroidModel& model, const Vec& x, const Vec& a, const Vec& b) {
  if (!model.chart_bounds.contains(x))
    throw std::invalid_argument("bracket_at: point outside chart bounds");
  const Tensor3 c = model.structure_at(x);
  Vec out = Vec::Zero(model.rank);
  for (int k = 0; k < model.rank; ++k) out[k] = a.dot(c[k] * b);
  return out;
}

Mat curvature_of_gamma(const AlgebroidModel& model,
                       const std::function<Mat(const Vec&, const Vec&)>& gamma,
                       const std::function<Mat(const Vec&, const Vec&, const Vec&)>& gamma_dx,
                       const Vec& x, const Vec& a, const Vec& b, double h_fd) {
  const Vec rho_a = model.anchor_at(x) * a;
  const Vec rho_b = model.anchor_at(x) * b;
  Mat d_ab, d_ba;
  if (gamma_dx) {
    d_ab = gamma_dx(x, rho_a, b);
    d_ba = gamma_dx(x, rho_b, a);
  } else {
    d_ab = directional_fd([&](const Vec& p) { return gamma(p, b); }, x, rho_a, h_fd);
    d_ba = directional_fd([&](const Vec& p) { return gamma(p, a); }, x, rho_b, h_fd);
  }
  const Mat ga = gamma(x, a);
  const Mat gb = gamma(x, b);
  return d_ab - d_ba + ga * gb - gb * ga - gamma(x, bracket_at(model, x, a, b));
}

Mat curvature_E(const AlgebroidModel& model, const RepUpToHomotopy& rep,
                const Vec& x, const Vec& a, const Vec& b, double h_fd) {
  return curvature_of_gamma(model, rep.gammaE, rep.gammaE_dx, x, a, b, h_fd);
}

Mat curvature_C(const AlgebroidModel& model, const RepUpToHomotopy& rep,
                const Vec& x, const Vec& a, const Vec& b, double h_fd) {
  return curvature_of_gamma(model, rep.gammaC, rep.gammaC_dx, x, a, b, h_fd);
}

bool ValidationReport::all_pass() const {
  for (const auto& ax : axioms)
    if (!ax.pass) return false;
  return true;
}

double ValidationReport::max_residual() const {
  double m = 0.0;
  for (const auto& ax : axioms) m = std::max(m, ax.residual);
  return m;
}

namespace {

std::vector<Vec> probe_vectors(int r, int extra = 2) {
  std::vector<Vec> probes;
  for (int i = 0; i < r; ++i) {
    Vec e = Vec::Zero(r);
    e[i] = 1.0;
    probes.push_back(e);
  }
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k = 0; k < extra && r > 0; ++k) {
    Vec v(r);
    for (int i = 0; i < r; ++i) v[i] = dist(rng);
    probes.push_back(v);
  }
  return probes;
}

}  // namespace

ValidationReport validate_model(const AlgebroidModel& model,
                                const std::vector<Vec>& samples, double h_fd,
                                double tol) {
  ValidationReport rep;
  rep.sample_count = static_cast<int>(samples.size());
  rep.fd_step = h_fd;
  const int r = model.rank;

  double r_anti = 0.0, r_anchor = 0.0, r_jacobi = 0.0;
  for (const Vec& x : samples) {
    const Tensor3 c = model.structure_at(x);
    const Mat rho = model.anchor_at(x);
    for (int k = 0; k < r; ++k)
      r_anti = std::max(r_anti, mat_norm(Mat(c[k] + c[k].transpose())));

    // anchor-bracket compatibility: rho(x) c(., j, l) = [rho_j, rho_l].
    auto anchor_col_deriv = [&](const Vec& v) -> Mat {
      if (model.anchor_dx) return model.anchor_dx(x, v);
      return directional_fd([&](const Vec& p) { return model.anchor_at(p); }, x, v, h_fd);
    };
    for (int j = 0; j < r; ++j) {
      const Mat dj = anchor_col_deriv(rho.col(j));
      for (int l = 0; l < r; ++l) {
        const Mat dl = anchor_col_deriv(rho.col(l));
        Vec lhs = Vec::Zero(model.base_dim);
        for (int k = 0; k < r; ++k) lhs += rho.col(k) * c[k](j, l);
        const Vec rhs = dj.col(l) - dl.col(j);
        r_anchor = std::max(r_anchor, (lhs - rhs).lpNorm<Eigen::Infinity>());
      }
    }

    // Jacobi: cyclic sum of c^l_{ij} c^m_{lk} - (rho_k . d) c^m_{ij}.
    auto structure_deriv = [&](const Vec& v) -> Tensor3 {
      if (model.structure_dx) return model.structure_dx(x, v);
      Tensor3 out(r, Mat::Zero(r, r));
      if (v.norm() == 0.0) return out;
      const Vec u = v / v.norm();
      const Tensor3 cp = model.structure_at(x + h_fd * u);
      const Tensor3 cm = model.structure_at(x - h_fd * u);
      for (int k = 0; k < r; ++k) out[k] = (v.norm() / (2.0 * h_fd)) * (cp[k] - cm[k]);
      return out;
    };
    std::vector<Tensor3> dc(r);
    for (int k = 0; k < r; ++k) dc[k] = structure_deriv(rho.col(k));
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        for (int k = j + 1; k < r; ++k)
          for (int m = 0; m < r; ++m) {
            double s = 0.0;
            const int idx[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
            for (const auto& t : idx) {
              for (int l = 0; l < r; ++l) s += c[m](l, t[2]) * c[l](t[0], t[1]);
              s -= dc[t[2]][m](t[0], t[1]);
            }
            r_jacobi = std::max(r_jacobi, std::abs(s));
          }
  }
  rep.axioms.push_back({"structure_antisymmetry", r_anti, 0.0, r_anti == 0.0});
  rep.axioms.push_back({"anchor_bracket_compat", r_anchor, tol, r_anchor <= tol});
  rep.axioms.push_back({"jacobi", r_jacobi, tol, r_jacobi <= tol});
  return rep;
}

ValidationReport validate_ruth(const AlgebroidModel& model, const RepUpToHomotopy& rep,
                               const std::vector<Vec>& samples, double h_fd,
                               double tol) {
  ValidationReport out;
  out.sample_count = static_cast<int>(samples.size());
  out.fd_step = h_fd;
  const int r = model.rank;
  const auto probes = probe_vectors(r);

  double r_anti = 0.0, r_lin = 0.0, r_chain = 0.0, r_omE = 0.0, r_omC = 0.0, r_dom = 0.0;
  for (const Vec& x : samples) {
    const Mat d = rep.complex->boundary_at(x);
    const Mat rho = model.anchor_at(x);

    auto boundary_deriv = [&](const Vec& v) -> Mat {
      if (rep.boundary_dx) return rep.boundary_dx(x, v);
      return directional_fd([&](const Vec& p) { return rep.complex->boundary_at(p); },
                            x, v, h_fd);
    };

    for (size_t pi = 0; pi < probes.size(); ++pi) {
      const Vec& a = probes[pi];
      // (i) d gammaC - gammaE d = (rho a . d/dx) d
      const Mat lhs = d * rep.gammaC_at(x, a) - rep.gammaE_at(x, a) * d;
      r_chain = std::max(r_chain, mat_norm(Mat(lhs - boundary_deriv(rho * a))));

      for (size_t pj = pi + 1; pj < probes.size(); ++pj) {
        const Vec& b = probes[pj];
        const Mat w = rep.omega_at(x, a, b);
        r_anti = std::max(r_anti, mat_norm(Mat(w + rep.omega_at(x, b, a))));
        // linearity of the connection coefficients
        r_lin = std::max(
            r_lin, mat_norm(Mat(rep.gammaE_at(x, a + 2.0 * b) - rep.gammaE_at(x, a) -
                                2.0 * rep.gammaE_at(x, b))));
        r_lin = std::max(
            r_lin, mat_norm(Mat(rep.gammaC_at(x, a + 2.0 * b) - rep.gammaC_at(x, a) -
                                2.0 * rep.gammaC_at(x, b))));
        // (ii), (iii)
        r_omE = std::max(r_omE, mat_norm(Mat(d * w - curvature_E(model, rep, x, a, b, h_fd))));
        r_omC = std::max(r_omC, mat_norm(Mat(w * d - curvature_C(model, rep, x, a, b, h_fd))));
      }
    }

    // (iv) covariant differential of omega on probe triples.
    auto nabla_omega = [&](const Vec& a, const Vec& b, const Vec& c) -> Mat {
      Mat ddir;
      if (rep.omega_dx)
        ddir = rep.omega_dx(x, rho * a, b, c);
      else
        ddir = directional_fd([&](const Vec& p) { return rep.omega_at(p, b, c); }, x,
                              rho * a, h_fd);
      return ddir + rep.gammaC_at(x, a) * rep.omega_at(x, b, c) -
             rep.omega_at(x, b, c) * rep.gammaE_at(x, a);
    };
    auto d_omega = [&](const Vec& a, const Vec& b, const Vec& c) -> double {
      const Mat v = nabla_omega(a, b, c) - nabla_omega(b, a, c) + nabla_omega(c, a, b) -
                    rep.omega_at(x, bracket_at(model, x, a, b), c) +
                    rep.omega_at(x, bracket_at(model, x, a, c), b) -
                    rep.omega_at(x, bracket_at(model, x, b, c), a);
      return mat_norm(v);
    };
    if (r >= 3) {
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
          for (int k = j + 1; k < r; ++k) {
            Vec ei = Vec::Zero(r), ej = Vec::Zero(r), ek = Vec::Zero(r);
            ei[i] = ej[j] = ek[k] = 1.0;
            r_dom = std::max(r_dom, d_omega(ei, ej, ek));
          }
    } else if (r == 2) {
      // rank-2 case: any triple is dependent; evaluates the same expression
      // on a fixed probe triple.
      Vec e1 = Vec::Zero(2), e2 = Vec::Zero(2), e3(2);
      e1[0] = e2[1] = 1.0;
      e3 << 0.7, -0.4;
      r_dom = std::max(r_dom, d_omega(e1, e2, e3));
    }
  }

  // "exact" means IEEE-exact for the antisymmetry (negation is lossless) and
  // roundoff-floor for linearity (re-association of sums).
  out.axioms.push_back({"omega_antisymmetry", r_anti, 0.0, r_anti == 0.0});
  out.axioms.push_back({"gamma_linearity", r_lin, 1e-12, r_lin <= 1e-12});
  out.axioms.push_back({"chain_compatibility", r_chain, tol, r_chain <= tol});
  out.axioms.push_back({"omega_vs_curvature_E", r_omE, tol, r_omE <= tol});
  out.axioms.push_back({"omega_vs_curvature_C", r_omC, tol, r_omC <= tol});
  out.axioms.push_back({"nabla_omega", r_dom, tol, r_dom <= tol});
  return out;
}

std::vector<Vec> default_samples(const AlgebroidModel& model, int count) {
  Box box = model.chart_bounds;
  for (Eigen::Index i = 0; i < box.lo.size(); ++i) {
    box.lo[i] = std::max(box.lo[i], -1.5);
    box.hi[i] = std::min(box.hi[i], 1.5);
  }
  box = box.shrunk(0.05);
  std::mt19937_64 rng(0xA11ebULL);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    Vec x(model.base_dim);
    for (int i = 0; i < model.base_dim; ++i)
      x[i] = box.lo[i] + dist(rng) * (box.hi[i] - box.lo[i]);
    pts.push_back(x);
  }
  return pts;
}

}  // namespace holonomy2
