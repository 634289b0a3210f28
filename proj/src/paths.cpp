#include "holonomy2/paths.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace holonomy2 {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

double inf_norm(const Vec& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

double flat_f(double t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / t); }
double flat_fp(double t) {
  return t <= 0.0 ? 0.0 : std::exp(-1.0 / t) / (t * t);
}

}  // namespace

Reparam smoothstep_reparam() {
  return {[](double t) { return smoothstep(t); },
          [](double t) { return smoothstep_prime(t); }};
}

Reparam smootherstep_reparam() {
  return {[](double t) { return smootherstep(t); },
          [](double t) { return smootherstep_prime(t); }};
}

Reparam flat_cutoff_reparam() {
  auto tau = [](double t) {
    const double num = flat_f(t), den = flat_f(t) + flat_f(1.0 - t);
    return den == 0.0 ? 0.0 : num / den;
  };
  auto dtau = [](double t) {
    const double fa = flat_f(t), fb = flat_f(1.0 - t);
    const double den = fa + fb;
    if (den == 0.0) return 0.0;
    const double dfa = flat_fp(t), dfb = -flat_fp(1.0 - t);
    return (dfa * den - fa * (dfa + dfb)) / (den * den);
  };
  return {tau, dtau};
}

APath APath::from_data(ModelPtr model, std::vector<Vec> gamma, std::vector<Vec> a,
                       double tol) {
  require(model != nullptr, "APath: null model");
  require(gamma.size() >= 2 && gamma.size() == a.size(),
          "APath: need matching gamma/a grids with at least two nodes");
  APath p;
  p.model = std::move(model);
  p.N = static_cast<int>(gamma.size()) - 1;
  p.gamma = std::move(gamma);
  p.a = std::move(a);
  p.tol = tol;
  for (const auto& g : p.gamma)
    require(g.size() == p.model->base_dim, "APath: base point dimension");
  for (const auto& v : p.a) require(v.size() == p.model->rank, "APath: fiber dimension");

  // residual relative to the path's own velocity scale (chart-scale invariant)
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < p.N; ++i) {
    const Vec lhs = static_cast<double>(p.N) * (p.gamma[i + 1] - p.gamma[i]);
    const Vec mid = 0.5 * (p.gamma[i] + p.gamma[i + 1]);
    const Vec amid = 0.5 * (p.a[i] + p.a[i + 1]);
    const Vec rhs = p.model->anchor_at(mid) * amid;
    scale = std::max(scale, std::max(inf_norm(lhs), inf_norm(rhs)));
    worst = std::max(worst, inf_norm(lhs - rhs));
  }
  p.residual = worst / (1.0 + scale);
  if (p.residual > tol) {
    std::ostringstream os;
    os << "APath: A-path condition residual " << p.residual << " exceeds " << tol;
    throw std::invalid_argument(os.str());
  }
  return p;
}

double path_distance(const APath& p, const APath& q) {
  if (p.N != q.N || p.model != q.model)
    return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (int i = 0; i <= p.N; ++i) {
    d = std::max(d, inf_norm(p.gamma[i] - q.gamma[i]));
    d = std::max(d, inf_norm(p.a[i] - q.a[i]));
  }
  return d;
}

APath unit_path(ModelPtr model, const Vec& x, int N) {
  std::vector<Vec> gamma(N + 1, x), a(N + 1, Vec::Zero(model->rank));
  return APath::from_data(std::move(model), std::move(gamma), std::move(a));
}

APath inverse_path(const APath& p) {
  std::vector<Vec> gamma(p.N + 1), a(p.N + 1);
  for (int i = 0; i <= p.N; ++i) {
    gamma[i] = p.gamma[p.N - i];
    a[i] = -p.a[p.N - i];
  }
  return APath::from_data(p.model, std::move(gamma), std::move(a), p.tol);
}

APath path_from_a(ModelPtr model, const Vec& x0, const std::function<Vec(double)>& a,
                  int N, double tol) {
  require(N >= 2, "path_from_a: N >= 2");
  const double h = 1.0 / N;
  std::vector<Vec> gamma(N + 1), av(N + 1);
  gamma[0] = x0;
  auto rhs = [&](const Vec& x, double t) -> Vec { return model->anchor_at(x) * a(t); };
  for (int i = 0; i < N; ++i) {
    const double t = i * h;
    const Vec k1 = rhs(gamma[i], t);
    const Vec k2 = rhs(gamma[i] + 0.5 * h * k1, t + 0.5 * h);
    const Vec k3 = rhs(gamma[i] + 0.5 * h * k2, t + 0.5 * h);
    const Vec k4 = rhs(gamma[i] + h * k3, t + h);
    gamma[i + 1] = gamma[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  for (int i = 0; i <= N; ++i) av[i] = a(i * h);
  return APath::from_data(std::move(model), std::move(gamma), std::move(av), tol);
}

APath constant_path(ModelPtr model, const Vec& x0, const Vec& xi, int N, double tol) {
  return path_from_a(std::move(model), x0, [&xi](double) { return xi; }, N, tol);
}

APath reparametrize(const APath& p, const Reparam& re) {
  std::vector<Vec> gamma(p.N + 1), a(p.N + 1);
  for (int i = 0; i <= p.N; ++i) {
    const double t = static_cast<double>(i) / p.N;
    const double u = re.tau(t) * p.N;
    gamma[i] = cubic_at(p.gamma, u);
    a[i] = re.dtau(t) * cubic_at(p.a, u);
  }
  return APath::from_data(p.model, std::move(gamma), std::move(a), p.tol);
}

APath concat_paths(const APath& b, const APath& a, double tol_endpoint,
                   const Reparam& re) {
  require(a.model == b.model, "concat_paths: different models");
  require(a.N == b.N, "concat_paths: grids must match");
  if (inf_norm(a.target() - b.source()) > tol_endpoint)
    throw std::invalid_argument("concat_paths: endpoint mismatch");
  const APath af = reparametrize(a, re);
  const APath bf = reparametrize(b, re);
  const int N = a.N;
  std::vector<Vec> gamma(2 * N + 1), av(2 * N + 1);
  const Vec shift = af.gamma[N] - bf.gamma[0];
  for (int i = 0; i <= N; ++i) {
    gamma[i] = af.gamma[i];
    av[i] = 2.0 * af.a[i];
  }
  for (int j = 1; j <= N; ++j) {
    gamma[N + j] = bf.gamma[j] + shift;
    av[N + j] = 2.0 * bf.a[j];
  }
  return APath::from_data(a.model, std::move(gamma), std::move(av),
                          8.0 * std::max(a.tol, b.tol));
}

AHomotopy AHomotopy::from_data(ModelPtr model, std::vector<std::vector<Vec>> gamma,
                               std::vector<std::vector<Vec>> a,
                               std::vector<std::vector<Vec>> b, double tol) {
  require(model != nullptr, "AHomotopy: null model");
  require(gamma.size() >= 3, "AHomotopy: need at least three s-rows");
  require(gamma.size() == a.size() && gamma.size() == b.size(),
          "AHomotopy: grid shapes disagree");
  AHomotopy h;
  h.model = std::move(model);
  h.M = static_cast<int>(gamma.size()) - 1;
  h.N = static_cast<int>(gamma.front().size()) - 1;
  require(h.N >= 2, "AHomotopy: need at least three t-nodes");
  for (int j = 0; j <= h.M; ++j)
    require(gamma[j].size() == a[j].size() && gamma[j].size() == b[j].size() &&
                static_cast<int>(gamma[j].size()) == h.N + 1,
            "AHomotopy: ragged grid");
  h.gamma = std::move(gamma);
  h.a = std::move(a);
  h.b = std::move(b);
  h.tol = tol;

  // boundary condition: b vanishes identically at t = 0, 1
  for (int j = 0; j <= h.M; ++j)
    if (inf_norm(h.b[j][0]) != 0.0 || inf_norm(h.b[j][h.N]) != 0.0)
      throw std::invalid_argument("AHomotopy: b must vanish exactly at t = 0, 1");

  // residuals measured relative to the data's own magnitude (chart-scale
  // invariant): per-row velocity scale for the A-path condition, grid scale
  // for the s-direction and morphism conditions
  double worst = 0.0;
  for (int j = 0; j <= h.M; ++j) {
    double row_worst = 0.0, row_scale = 0.0;
    for (int i = 0; i < h.N; ++i) {
      const Vec lhs = static_cast<double>(h.N) * (h.gamma[j][i + 1] - h.gamma[j][i]);
      const Vec mid = 0.5 * (h.gamma[j][i] + h.gamma[j][i + 1]);
      const Vec amid = 0.5 * (h.a[j][i] + h.a[j][i + 1]);
      const Vec rhs = h.model->anchor_at(mid) * amid;
      row_scale = std::max(row_scale, std::max(inf_norm(lhs), inf_norm(rhs)));
      row_worst = std::max(row_worst, inf_norm(lhs - rhs));
    }
    worst = std::max(worst, row_worst / (1.0 + row_scale));
  }
  double gs_worst = 0.0, gs_scale = 0.0, m_worst = 0.0, m_scale = 0.0;
  for (int j = 0; j <= h.M; ++j) {
    for (int i = 0; i <= h.N; ++i) {
      const Vec dsg = grid_diff([&](int k) { return h.gamma[k][i]; }, j, h.M);
      const Vec rhs = h.model->anchor_at(h.gamma[j][i]) * h.b[j][i];
      gs_scale = std::max(gs_scale, std::max(inf_norm(dsg), inf_norm(rhs)));
      gs_worst = std::max(gs_worst, inf_norm(dsg - rhs));

      const Vec dsa = grid_diff([&](int k) { return h.a[k][i]; }, j, h.M);
      const Vec dtb = grid_diff([&](int k) { return h.b[j][k]; }, i, h.N);
      const Vec br = bracket_at(*h.model, h.gamma[j][i], h.a[j][i], h.b[j][i]);
      m_scale = std::max(m_scale, inf_norm(dsa) + inf_norm(dtb) + inf_norm(br));
      m_worst = std::max(m_worst, inf_norm(dsa - dtb - br));
    }
  }
  worst = std::max(worst, gs_worst / (1.0 + gs_scale));
  worst = std::max(worst, m_worst / (1.0 + m_scale));
  h.residual = worst;
  if (worst > tol) {
    std::ostringstream os;
    os << "AHomotopy: morphism-condition residual " << worst << " exceeds " << tol;
    throw std::invalid_argument(os.str());
  }
  return h;
}

APath AHomotopy::sv_path() const {
  return APath::from_data(model, gamma.front(), a.front(), tol);
}

APath AHomotopy::tv_path() const {
  return APath::from_data(model, gamma.back(), a.back(), tol);
}

AHomotopy vertical_unit(const APath& p, int M) {
  std::vector<std::vector<Vec>> g(M + 1, p.gamma), a(M + 1, p.a),
      b(M + 1, std::vector<Vec>(p.N + 1, Vec::Zero(p.model->rank)));
  return AHomotopy::from_data(p.model, std::move(g), std::move(a), std::move(b), p.tol);
}

AHomotopy horizontal_unit(ModelPtr model, const Vec& x, int N, int M) {
  return vertical_unit(unit_path(std::move(model), x, N), M);
}

AHomotopy generate_homotopy(const APath& a0, const std::vector<std::vector<Vec>>& b,
                            double tol) {
  const int N = a0.N;
  const int M = static_cast<int>(b.size()) - 1;
  require(M >= 2 && N >= 4, "generate_homotopy: grid too small");
  for (const auto& row : b)
    require(static_cast<int>(row.size()) == N + 1,
            "generate_homotopy: b grid does not match the path grid");
  for (int j = 0; j <= M; ++j)
    require(inf_norm(b[j][0]) == 0.0 && inf_norm(b[j][N]) == 0.0,
            "generate_homotopy: b must vanish at t = 0, 1");

  const auto& model = *a0.model;
  const double h = 1.0 / M;

  // half-level b rows (cubic in s)
  std::vector<std::vector<Vec>> bhalf(M, std::vector<Vec>(N + 1));
  for (int i = 0; i <= N; ++i) {
    std::vector<Vec> col(M + 1);
    for (int j = 0; j <= M; ++j) col[j] = b[j][i];
    for (int j = 0; j < M; ++j) bhalf[j][i] = midpoint4(col, j);
  }

  struct Row {
    std::vector<Vec> g, a;
  };
  auto rhs = [&](const Row& r, const std::vector<Vec>& brow) -> Row {
    Row out;
    out.g.resize(N + 1);
    out.a.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
      out.g[i] = model.anchor_at(r.g[i]) * brow[i];
      const Vec dtb = grid_diff4([&](int k) { return brow[k]; }, i, N);
      out.a[i] = dtb + bracket_at(model, r.g[i], r.a[i], brow[i]);
    }
    return out;
  };
  auto axpy = [&](const Row& r, double c, const Row& d) -> Row {
    Row out = r;
    for (int i = 0; i <= N; ++i) {
      out.g[i] += c * d.g[i];
      out.a[i] += c * d.a[i];
    }
    return out;
  };

  std::vector<std::vector<Vec>> gg(M + 1), aa(M + 1);
  Row cur{a0.gamma, a0.a};
  gg[0] = cur.g;
  aa[0] = cur.a;
  for (int j = 0; j < M; ++j) {
    const Row k1 = rhs(cur, b[j]);
    const Row k2 = rhs(axpy(cur, 0.5 * h, k1), bhalf[j]);
    const Row k3 = rhs(axpy(cur, 0.5 * h, k2), bhalf[j]);
    const Row k4 = rhs(axpy(cur, h, k3), b[j + 1]);
    for (int i = 0; i <= N; ++i) {
      cur.g[i] += (h / 6.0) * (k1.g[i] + 2.0 * k2.g[i] + 2.0 * k3.g[i] + k4.g[i]);
      cur.a[i] += (h / 6.0) * (k1.a[i] + 2.0 * k2.a[i] + 2.0 * k3.a[i] + k4.a[i]);
    }
    gg[j + 1] = cur.g;
    aa[j + 1] = cur.a;
  }
  return AHomotopy::from_data(a0.model, std::move(gg), std::move(aa), b, tol);
}

std::vector<std::vector<Vec>> sinusoidal_variation(const Vec& eta, int N, int M) {
  std::vector<std::vector<Vec>> b(M + 1, std::vector<Vec>(N + 1));
  for (int j = 0; j <= M; ++j)
    for (int i = 0; i <= N; ++i) {
      const double t = static_cast<double>(i) / N;
      const double w = (i == 0 || i == N) ? 0.0 : std::sin(M_PI * t);
      b[j][i] = w * eta;
    }
  return b;
}

AHomotopy thin_reparam_homotopy(const APath& p, const Reparam& re, int M) {
  const int N = p.N;
  std::vector<std::vector<Vec>> g(M + 1, std::vector<Vec>(N + 1)),
      a(M + 1, std::vector<Vec>(N + 1)), b(M + 1, std::vector<Vec>(N + 1));
  for (int j = 0; j <= M; ++j) {
    const double s = static_cast<double>(j) / M;
    for (int i = 0; i <= N; ++i) {
      const double t = static_cast<double>(i) / N;
      const double taus = (1.0 - s) * t + s * re.tau(t);
      const double dtaus = (1.0 - s) + s * re.dtau(t);
      const double dstau = re.tau(t) - t;
      const Vec av = cubic_at(p.a, taus * N);
      g[j][i] = cubic_at(p.gamma, taus * N);
      a[j][i] = dtaus * av;
      b[j][i] = (i == 0 || i == N) ? Vec(Vec::Zero(p.model->rank)) : Vec(dstau * av);
    }
  }
  return AHomotopy::from_data(p.model, std::move(g), std::move(a), std::move(b), p.tol);
}

AHomotopy homotopy_reparametrize(const AHomotopy& h, const Reparam& re) {
  const int N = h.N, M = h.M;
  // resample in t, then in s
  std::vector<std::vector<Vec>> g1(M + 1, std::vector<Vec>(N + 1)),
      a1(M + 1, std::vector<Vec>(N + 1)), b1(M + 1, std::vector<Vec>(N + 1));
  for (int j = 0; j <= M; ++j)
    for (int i = 0; i <= N; ++i) {
      const double u = re.tau(static_cast<double>(i) / N) * N;
      g1[j][i] = cubic_at(h.gamma[j], u);
      a1[j][i] = cubic_at(h.a[j], u);
      b1[j][i] = cubic_at(h.b[j], u);
    }
  std::vector<std::vector<Vec>> g(M + 1, std::vector<Vec>(N + 1)),
      a(M + 1, std::vector<Vec>(N + 1)), b(M + 1, std::vector<Vec>(N + 1));
  std::vector<Vec> col(M + 1);
  for (int i = 0; i <= N; ++i) {
    const double dt = re.dtau(static_cast<double>(i) / N);
    for (int what = 0; what < 3; ++what) {
      for (int j = 0; j <= M; ++j)
        col[j] = (what == 0 ? g1 : what == 1 ? a1 : b1)[j][i];
      for (int j = 0; j <= M; ++j) {
        const double s = static_cast<double>(j) / M;
        const Vec v = cubic_at(col, re.tau(s) * M);
        if (what == 0) g[j][i] = v;
        if (what == 1) a[j][i] = dt * v;
        if (what == 2)
          b[j][i] = (i == 0 || i == N) ? Vec(Vec::Zero(h.model->rank))
                                       : Vec(re.dtau(s) * v);
      }
    }
  }
  return AHomotopy::from_data(h.model, std::move(g), std::move(a), std::move(b), h.tol);
}

double thinness_defect(const AHomotopy& h) {
  double worst = 0.0;
  for (int j = 0; j <= h.M; ++j)
    for (int i = 0; i <= h.N; ++i)
      worst = std::max(worst, wedge_norm(h.a[j][i], h.b[j][i]));
  return worst;
}

bool is_thin(const AHomotopy& h, double tol_thin) {
  return thinness_defect(h) <= tol_thin;
}

AHomotopy flatten_s(const AHomotopy& h, const Reparam& re) {
  const int N = h.N, M = h.M;
  std::vector<std::vector<Vec>> g(M + 1), a(M + 1), b(M + 1);
  std::vector<Vec> colg(M + 1), cola(M + 1), colb(M + 1);
  for (int j = 0; j <= M; ++j) {
    g[j].resize(N + 1);
    a[j].resize(N + 1);
    b[j].resize(N + 1);
  }
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= M; ++j) {
      colg[j] = h.gamma[j][i];
      cola[j] = h.a[j][i];
      colb[j] = h.b[j][i];
    }
    for (int j = 0; j <= M; ++j) {
      const double s = static_cast<double>(j) / M;
      const double u = re.tau(s) * M;
      g[j][i] = cubic_at(colg, u);
      a[j][i] = cubic_at(cola, u);
      b[j][i] = (i == 0 || i == N) ? Vec(Vec::Zero(h.model->rank))
                                   : Vec(re.dtau(s) * cubic_at(colb, u));
    }
  }
  return AHomotopy::from_data(h.model, std::move(g), std::move(a), std::move(b),
                              8.0 * h.tol);
}

AHomotopy flatten_t(const AHomotopy& h, const Reparam& re) {
  const int N = h.N, M = h.M;
  std::vector<std::vector<Vec>> g(M + 1, std::vector<Vec>(N + 1)),
      a(M + 1, std::vector<Vec>(N + 1)), b(M + 1, std::vector<Vec>(N + 1));
  for (int j = 0; j <= M; ++j)
    for (int i = 0; i <= N; ++i) {
      const double t = static_cast<double>(i) / N;
      const double u = re.tau(t) * N;
      g[j][i] = cubic_at(h.gamma[j], u);
      a[j][i] = re.dtau(t) * cubic_at(h.a[j], u);
      b[j][i] = (i == 0 || i == N) ? Vec(Vec::Zero(h.model->rank))
                                   : Vec(cubic_at(h.b[j], u));
    }
  return AHomotopy::from_data(h.model, std::move(g), std::move(a), std::move(b),
                              8.0 * h.tol);
}

namespace {
double face_distance(const std::vector<Vec>& g1, const std::vector<Vec>& a1,
                     const std::vector<Vec>& g2, const std::vector<Vec>& a2) {
  double d = 0.0;
  for (size_t i = 0; i < g1.size(); ++i) {
    d = std::max(d, inf_norm(g1[i] - g2[i]));
    d = std::max(d, inf_norm(a1[i] - a2[i]));
  }
  return d;
}
}  // namespace

AHomotopy vconcat(const AHomotopy& h2, const AHomotopy& h1, double tol_face,
                  bool auto_flatten, const Reparam& re) {
  require(h1.model == h2.model, "vconcat: different models");
  require(h1.N == h2.N && h1.M == h2.M, "vconcat: grids must match");
  if (face_distance(h1.gamma.back(), h1.a.back(), h2.gamma.front(), h2.a.front()) >
      tol_face)
    throw std::invalid_argument("vconcat: t_V(h1) and s_V(h2) do not match");
  const AHomotopy f1 = auto_flatten ? flatten_s(h1, re) : h1;
  const AHomotopy f2 = auto_flatten ? flatten_s(h2, re) : h2;
  const int N = h1.N, M = h1.M;
  std::vector<std::vector<Vec>> g(2 * M + 1), a(2 * M + 1), b(2 * M + 1);
  for (int j = 0; j <= M; ++j) {
    g[j] = f1.gamma[j];
    a[j] = f1.a[j];
    b[j].resize(N + 1);
    for (int i = 0; i <= N; ++i) b[j][i] = 2.0 * f1.b[j][i];
  }
  for (int j = 1; j <= M; ++j) {
    g[M + j] = f2.gamma[j];
    a[M + j] = f2.a[j];
    b[M + j].resize(N + 1);
    for (int i = 0; i <= N; ++i) b[M + j][i] = 2.0 * f2.b[j][i];
  }
  return AHomotopy::from_data(h1.model, std::move(g), std::move(a), std::move(b),
                              8.0 * std::max(h1.tol, h2.tol));
}

AHomotopy hconcat(const AHomotopy& h2, const AHomotopy& h1, double tol_face,
                  bool auto_flatten, const Reparam& re) {
  require(h1.model == h2.model, "hconcat: different models");
  require(h1.N == h2.N && h1.M == h2.M, "hconcat: grids must match");
  if (inf_norm(h1.target_point() - h2.source_point()) > tol_face)
    throw std::invalid_argument("hconcat: t_H(h1) and s_H(h2) do not match");
  const AHomotopy f1 = auto_flatten ? flatten_t(h1, re) : h1;
  const AHomotopy f2 = auto_flatten ? flatten_t(h2, re) : h2;
  const int N = h1.N, M = h1.M;
  std::vector<std::vector<Vec>> g(M + 1, std::vector<Vec>(2 * N + 1)),
      a(M + 1, std::vector<Vec>(2 * N + 1)), b(M + 1, std::vector<Vec>(2 * N + 1));
  for (int j = 0; j <= M; ++j) {
    for (int i = 0; i <= N; ++i) {
      g[j][i] = f1.gamma[j][i];
      a[j][i] = 2.0 * f1.a[j][i];
      b[j][i] = f1.b[j][i];
    }
    for (int i = 1; i <= N; ++i) {
      g[j][N + i] = f2.gamma[j][i];
      a[j][N + i] = 2.0 * f2.a[j][i];
      b[j][N + i] = f2.b[j][i];
    }
  }
  return AHomotopy::from_data(h1.model, std::move(g), std::move(a), std::move(b),
                              8.0 * std::max(h1.tol, h2.tol));
}

AHomotopy vinv_homotopy(const AHomotopy& h) {
  const int N = h.N, M = h.M;
  std::vector<std::vector<Vec>> g(M + 1), a(M + 1), b(M + 1);
  for (int j = 0; j <= M; ++j) {
    g[j] = h.gamma[M - j];
    a[j] = h.a[M - j];
    b[j].resize(N + 1);
    for (int i = 0; i <= N; ++i) b[j][i] = -h.b[M - j][i];
  }
  return AHomotopy::from_data(h.model, std::move(g), std::move(a), std::move(b), h.tol);
}

AHomotopy hinv_homotopy(const AHomotopy& h) {
  const int N = h.N, M = h.M;
  std::vector<std::vector<Vec>> g(M + 1, std::vector<Vec>(N + 1)),
      a(M + 1, std::vector<Vec>(N + 1)), b(M + 1, std::vector<Vec>(N + 1));
  for (int j = 0; j <= M; ++j)
    for (int i = 0; i <= N; ++i) {
      g[j][i] = h.gamma[j][N - i];
      a[j][i] = -h.a[j][N - i];
      b[j][i] = h.b[j][N - i];
    }
  return AHomotopy::from_data(h.model, std::move(g), std::move(a), std::move(b), h.tol);
}

}  // namespace holonomy2
