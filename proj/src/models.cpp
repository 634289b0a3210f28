#include <cmath>
#include <stdexcept>

#include "holonomy2/algebroid.hpp"

namespace holonomy2 {

namespace {

double param(const std::map<std::string, double>& params, const std::string& key,
             double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

Box interval_box(int m, double half_width) {
  Box b;
  b.lo = Vec::Constant(m, -half_width);
  b.hi = Vec::Constant(m, half_width);
  return b;
}

/// hat(a) b = a x b for a, b in R^3.
Mat hat3(const Vec& a) {
  Mat m(3, 3);
  m << 0.0, -a[2], a[1], a[2], 0.0, -a[0], -a[1], a[0], 0.0;
  return m;
}

Tensor3 zero_structure(int r) { return Tensor3(r, Mat::Zero(r, r)); }

ModelBundle make_so3_string() {
  auto model = std::make_shared<AlgebroidModel>();
  model->name = "so3_string";
  model->base_dim = 1;
  model->rank = 3;
  model->chart_bounds = interval_box(1, 1.0);
  model->anchor = [](const Vec&) { return Mat::Zero(1, 3); };
  Tensor3 eps = zero_structure(3);
  // [e_i, e_j] = e_k for cyclic (i, j, k)
  eps[2](0, 1) = 1.0;
  eps[2](1, 0) = -1.0;
  eps[0](1, 2) = 1.0;
  eps[0](2, 1) = -1.0;
  eps[1](2, 0) = 1.0;
  eps[1](0, 2) = -1.0;
  model->structure = [eps](const Vec&) { return eps; };
  model->anchor_dx = [](const Vec&, const Vec&) { return Mat::Zero(1, 3); };
  model->structure_dx = [](const Vec&, const Vec&) { return zero_structure(3); };

  RepUpToHomotopy rep;
  rep.complex = make_constant_complex(Mat::Zero(3, 1));  // d: R -> g* is zero
  rep.gammaE = [](const Vec&, const Vec& a) { return hat3(a); };  // ad*_a
  rep.gammaC = [](const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  rep.omega = [](const Vec&, const Vec& a, const Vec& b) {
    Mat w(1, 3);
    w(0, 0) = a[1] * b[2] - a[2] * b[1];
    w(0, 1) = a[2] * b[0] - a[0] * b[2];
    w(0, 2) = a[0] * b[1] - a[1] * b[0];
    return w;
  };
  rep.gammaE_dx = [](const Vec&, const Vec&, const Vec&) { return Mat::Zero(3, 3); };
  rep.gammaC_dx = [](const Vec&, const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  rep.boundary_dx = [](const Vec&, const Vec&) { return Mat::Zero(3, 1); };
  rep.omega_dx = [](const Vec&, const Vec&, const Vec&, const Vec&) {
    return Mat::Zero(1, 3);
  };
  return {model, rep};
}

ModelBundle make_abelian(const std::map<std::string, double>& params) {
  const int r = static_cast<int>(param(params, "rank", 2));
  const int dim_E = static_cast<int>(param(params, "dim_E", 2));
  const int dim_C = static_cast<int>(param(params, "dim_C", 2));
  if (r < 0 || dim_E < 0 || dim_C < 0)
    throw std::invalid_argument("abelian: dimensions must be nonnegative");
  auto model = std::make_shared<AlgebroidModel>();
  model->name = "abelian";
  model->base_dim = 1;
  model->rank = r;
  model->chart_bounds = interval_box(1, 2.0);
  model->anchor = [r](const Vec&) { return Mat::Zero(1, r); };
  model->structure = [r](const Vec&) { return zero_structure(r); };
  model->anchor_dx = [r](const Vec&, const Vec&) { return Mat::Zero(1, r); };
  model->structure_dx = [r](const Vec&, const Vec&) { return zero_structure(r); };

  RepUpToHomotopy rep;
  rep.complex = make_constant_complex(Mat::Zero(dim_E, dim_C));
  rep.gammaE = [dim_E](const Vec&, const Vec&) { return Mat::Zero(dim_E, dim_E); };
  rep.gammaC = [dim_C](const Vec&, const Vec&) { return Mat::Zero(dim_C, dim_C); };
  rep.omega = [dim_E, dim_C](const Vec&, const Vec&, const Vec&) {
    return Mat::Zero(dim_C, dim_E);
  };
  rep.gammaE_dx = [dim_E](const Vec&, const Vec&, const Vec&) {
    return Mat::Zero(dim_E, dim_E);
  };
  rep.gammaC_dx = [dim_C](const Vec&, const Vec&, const Vec&) {
    return Mat::Zero(dim_C, dim_C);
  };
  rep.boundary_dx = [dim_E, dim_C](const Vec&, const Vec&) {
    return Mat::Zero(dim_E, dim_C);
  };
  rep.omega_dx = [dim_E, dim_C](const Vec&, const Vec&, const Vec&, const Vec&) {
    return Mat::Zero(dim_C, dim_E);
  };
  return {model, rep};
}

/// aff(1)-type model over a point with a non-flat action on W = R^2 and the
/// complex [I | 0]: C = W + R -> E = W.
ModelBundle make_constant_coeff() {
  auto model = std::make_shared<AlgebroidModel>();
  model->name = "constant_coeff";
  model->base_dim = 1;
  model->rank = 2;
  model->chart_bounds = interval_box(1, 2.0);
  model->anchor = [](const Vec&) { return Mat::Zero(1, 2); };
  Tensor3 c = zero_structure(2);
  c[1](0, 1) = 1.0;  // [e_0, e_1] = e_1
  c[1](1, 0) = -1.0;
  model->structure = [c](const Vec&) { return c; };
  model->anchor_dx = [](const Vec&, const Vec&) { return Mat::Zero(1, 2); };
  model->structure_dx = [](const Vec&, const Vec&) { return zero_structure(2); };

  Mat G0(2, 2), G1(2, 2);
  G0 << 0.0, 1.0, 0.0, 0.0;
  G1 << 0.0, 0.0, 1.0, 0.0;
  auto gammaW = [G0, G1](const Vec& a) -> Mat { return a[0] * G0 + a[1] * G1; };
  auto curvW = [gammaW, c](const Vec& a, const Vec& b) -> Mat {
    const Mat ga = gammaW(a), gb = gammaW(b);
    Vec br(2);
    br[0] = a.dot(c[0] * b);
    br[1] = a.dot(c[1] * b);
    return ga * gb - gb * ga - gammaW(br);
  };

  Mat d(2, 3);
  d << 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;

  RepUpToHomotopy rep;
  rep.complex = make_constant_complex(d);
  rep.gammaE = [gammaW](const Vec&, const Vec& a) { return gammaW(a); };
  rep.gammaC = [gammaW](const Vec&, const Vec& a) {
    Mat g = Mat::Zero(3, 3);
    g.topLeftCorner(2, 2) = gammaW(a);
    return g;
  };
  rep.omega = [curvW](const Vec&, const Vec& a, const Vec& b) {
    Mat w = Mat::Zero(3, 2);
    w.topLeftCorner(2, 2) = curvW(a, b);
    return w;
  };
  rep.gammaE_dx = [](const Vec&, const Vec&, const Vec&) { return Mat::Zero(2, 2); };
  rep.gammaC_dx = [](const Vec&, const Vec&, const Vec&) { return Mat::Zero(3, 3); };
  rep.boundary_dx = [](const Vec&, const Vec&) { return Mat::Zero(2, 3); };
  rep.omega_dx = [](const Vec&, const Vec&, const Vec&, const Vec&) {
    return Mat::Zero(3, 2);
  };
  return {model, rep};
}

/// Tangent algebroid of S^2 in the stereographic chart: rho = id and the
/// coordinate frame commutes.
std::shared_ptr<AlgebroidModel> make_sphere_chart(const std::string& name) {
  auto model = std::make_shared<AlgebroidModel>();
  model->name = name;
  model->base_dim = 2;
  model->rank = 2;
  model->chart_bounds = interval_box(2, 2.0e4);
  model->anchor = [](const Vec&) { return Mat::Identity(2, 2); };
  model->structure = [](const Vec&) { return zero_structure(2); };
  model->anchor_dx = [](const Vec&, const Vec&) { return Mat::Zero(2, 2); };
  model->structure_dx = [](const Vec&, const Vec&) { return zero_structure(2); };
  return model;
}

ModelBundle make_prequantization_s2() {
  auto model = make_sphere_chart("prequantization_s2");
  RepUpToHomotopy rep;
  rep.complex = make_constant_complex(Mat::Zero(1, 1));
  rep.gammaE = [](const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  rep.gammaC = [](const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  // unit-sphere area density in the stereographic chart
  rep.omega = [](const Vec& x, const Vec& a, const Vec& b) {
    const double u = 1.0 + x.squaredNorm();
    Mat w(1, 1);
    w(0, 0) = 4.0 / (u * u) * (a[0] * b[1] - a[1] * b[0]);
    return w;
  };
  rep.gammaE_dx = [](const Vec&, const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  rep.gammaC_dx = [](const Vec&, const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  rep.boundary_dx = [](const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  rep.omega_dx = [](const Vec& x, const Vec& v, const Vec& a, const Vec& b) {
    const double u = 1.0 + x.squaredNorm();
    Mat w(1, 1);
    w(0, 0) = -16.0 * x.dot(v) / (u * u * u) * (a[0] * b[1] - a[1] * b[0]);
    return w;
  };
  return {model, rep};
}

ModelBundle make_tangent_sphere_type1() {
  auto model = make_sphere_chart("tangent_sphere_type1");

  // Levi-Civita data of the round metric 4/(1+|x|^2)^2 (dx1^2 + dx2^2):
  //   Gamma(a) = a p^T + (a.p) I - p a^T  with p = -2x/(1+|x|^2).
  auto pvec = [](const Vec& x) -> Vec { return -2.0 / (1.0 + x.squaredNorm()) * x; };
  auto gamma = [pvec](const Vec& x, const Vec& a) -> Mat {
    const Vec p = pvec(x);
    return a * p.transpose() + a.dot(p) * Mat::Identity(2, 2) - p * a.transpose();
  };
  auto gamma_dx = [](const Vec& x, const Vec& v, const Vec& a) -> Mat {
    const double u = 1.0 + x.squaredNorm();
    const Vec q = -2.0 / (u * u) * (u * v - 2.0 * x.dot(v) * x);
    return a * q.transpose() + a.dot(q) * Mat::Identity(2, 2) - q * a.transpose();
  };

  RepUpToHomotopy rep;
  rep.complex = make_constant_complex(Mat::Identity(2, 2));
  rep.gammaE = gamma;
  rep.gammaC = gamma;
  // constant-curvature endomorphism: omega(a, b) = lambda (a b^T - b a^T)
  rep.omega = [](const Vec& x, const Vec& a, const Vec& b) -> Mat {
    const double u = 1.0 + x.squaredNorm();
    const double lambda = 4.0 / (u * u);
    return lambda * (a * b.transpose() - b * a.transpose());
  };
  rep.gammaE_dx = gamma_dx;
  rep.gammaC_dx = gamma_dx;
  rep.boundary_dx = [](const Vec&, const Vec&) { return Mat::Zero(2, 2); };
  rep.omega_dx = [](const Vec& x, const Vec& v, const Vec& a, const Vec& b) -> Mat {
    const double u = 1.0 + x.squaredNorm();
    const double dlambda = -16.0 * x.dot(v) / (u * u * u);
    return dlambda * (a * b.transpose() - b * a.transpose());
  };
  return {model, rep};
}

}  // namespace

ModelBundle builtin_model(const std::string& name,
                          const std::map<std::string, double>& params) {
  if (name == "so3_string") return make_so3_string();
  if (name == "abelian") return make_abelian(params);
  if (name == "constant_coeff") return make_constant_coeff();
  if (name == "prequantization_s2") return make_prequantization_s2();
  if (name == "tangent_sphere_type1") return make_tangent_sphere_type1();
  throw std::invalid_argument("builtin_model: unknown model '" + name + "'");
}

std::vector<std::string> builtin_model_names() {
  return {"so3_string", "tangent_sphere_type1", "prequantization_s2", "constant_coeff",
          "abelian"};
}

}  // namespace holonomy2
