#include "holonomy2/integrability.hpp"

#include <cmath>
#include <stdexcept>

namespace holonomy2 {

namespace {

double inf_norm(const Vec& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }
double mat_norm(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

/// Unit lasso loop through the chart origin: out along +x1, once around the
/// origin-centered circle (clockwise, so the sweep orientation is positive),
/// and back along +x1. The sweep scales this loop by a radius schedule, so
/// gamma(t, s) = r(s) L(t) with closed-form t- and s-derivatives.
constexpr double kLassoT1 = 0.15, kLassoT2 = 0.85;

Vec lasso_shape(double t) {
  Vec p(2);
  if (t <= kLassoT1) {
    const double w = smootherstep(t / kLassoT1);
    p << w * w, 0.0;
  } else if (t <= kLassoT2) {
    const double phi = -2.0 * M_PI * smootherstep((t - kLassoT1) / (kLassoT2 - kLassoT1));
    p << std::cos(phi), std::sin(phi);
  } else {
    const double w = smootherstep((1.0 - t) / (1.0 - kLassoT2));
    p << w * w, 0.0;
  }
  return p;
}

Vec lasso_shape_dt(double t) {
  Vec p(2);
  if (t <= kLassoT1) {
    const double u = t / kLassoT1;
    p << 2.0 * smootherstep(u) * smootherstep_prime(u) / kLassoT1, 0.0;
  } else if (t <= kLassoT2) {
    const double u = (t - kLassoT1) / (kLassoT2 - kLassoT1);
    const double phi = -2.0 * M_PI * smootherstep(u);
    const double dphi = -2.0 * M_PI * smootherstep_prime(u) / (kLassoT2 - kLassoT1);
    p << -std::sin(phi) * dphi, std::cos(phi) * dphi;
  } else {
    const double u = (1.0 - t) / (1.0 - kLassoT2);
    p << -2.0 * smootherstep(u) * smootherstep_prime(u) / (1.0 - kLassoT2), 0.0;
  }
  return p;
}

/// Radius schedule of the sweep: main band up to R = cot(cap_angle / 2),
/// then geometric growth by closure_scale. Returns (r, dr/du).
std::pair<double, double> radius_schedule(double u, double R, double lambda) {
  constexpr double u1 = 0.85;
  const double theta_max = 2.0 * std::atan(R);
  if (u <= u1) {
    const double w = smootherstep(u / u1);
    const double r = std::tan(0.5 * theta_max * w);
    const double dr =
        (1.0 + r * r) * 0.5 * theta_max * smootherstep_prime(u / u1) / u1;
    return {r, dr};
  }
  const double w = smootherstep((u - u1) / (1.0 - u1));
  const double r = R * std::pow(lambda, w);
  const double dr =
      r * std::log(lambda) * smootherstep_prime((u - u1) / (1.0 - u1)) / (1.0 - u1);
  return {r, dr};
}

}  // namespace

ASphere ASphere::from_homotopy(AHomotopy h, double defect_estimate) {
  for (int i = 0; i <= h.N; ++i) {
    if (inf_norm(h.a.front()[i]) != 0.0 || inf_norm(h.a.back()[i]) != 0.0)
      throw std::invalid_argument(
          "ASphere: vertical source and target must be unit paths (a = 0 exactly)");
  }
  if (inf_norm(h.source_point() - h.target_point()) != 0.0)
    throw std::invalid_argument("ASphere: endpoints must coincide");
  ASphere s;
  s.homotopy = std::move(h);
  s.defect_estimate = defect_estimate;
  return s;
}

ASphere full_sphere_cover(ModelPtr model, int N, int M,
                          const SphereCoverParams& params) {
  if (model->base_dim != 2 || model->rank != 2)
    throw std::invalid_argument("full_sphere_cover: needs a 2d chart model");
  if (N < 8 || M < 8 || N % 2 != 0 || M % 2 != 0)
    throw std::invalid_argument("full_sphere_cover: N, M must be even and >= 8");
  const double R = 1.0 / std::tan(0.5 * params.cap_angle);
  const double lambda = params.closure_scale;

  std::vector<std::vector<Vec>> g(M + 1, std::vector<Vec>(N + 1)),
      a(M + 1, std::vector<Vec>(N + 1)), b(M + 1, std::vector<Vec>(N + 1));
  // rows 0 .. M-1 follow the schedule; row M closes at the base point, with
  // the unresolvable polar cap compressed into the final grid interval
  for (int j = 0; j < M; ++j) {
    const double u = static_cast<double>(j) / (M - 1);
    const auto [r, dr_du] = radius_schedule(u, R, lambda);
    const double dr_ds = dr_du * M / (M - 1.0);
    for (int i = 0; i <= N; ++i) {
      const double t = static_cast<double>(i) / N;
      const Vec shape = lasso_shape(t);
      g[j][i] = r * shape;
      a[j][i] = r * lasso_shape_dt(t);
      b[j][i] = dr_ds * shape;
    }
  }
  for (int i = 0; i <= N; ++i) {
    g[M][i] = Vec::Zero(2);
    a[M][i] = Vec::Zero(2);
  }
  // the closing rows store the validator's own difference stencils for b
  for (int i = 0; i <= N; ++i) {
    b[M - 1][i] = 0.5 * M * (g[M][i] - g[M - 2][i]);
    b[M][i] = 0.5 * M * (3.0 * g[M][i] - 4.0 * g[M - 1][i] + g[M - 2][i]);
  }

  AHomotopy h = AHomotopy::from_data(std::move(model), std::move(g), std::move(a),
                                     std::move(b), params.tol);
  // f-mass beyond the main-sweep radius bounds both the smoothed cap and the
  // under-resolved closing band
  const double defect = 4.0 * M_PI / (1.0 + R * R) +
                        4.0 * M_PI / (1.0 + lambda * R * lambda * R);
  return ASphere::from_homotopy(std::move(h), defect);
}

AHomotopy sphere_cap_sweep(ModelPtr model, double theta_max, int N, int M,
                           double tol) {
  if (model->base_dim != 2 || model->rank != 2)
    throw std::invalid_argument("sphere_cap_sweep: needs a 2d chart model");
  std::vector<std::vector<Vec>> g(M + 1, std::vector<Vec>(N + 1)),
      a(M + 1, std::vector<Vec>(N + 1)), b(M + 1, std::vector<Vec>(N + 1));
  for (int j = 0; j <= M; ++j) {
    const double u = static_cast<double>(j) / M;
    const double w = smootherstep(u);
    const double r = std::tan(0.5 * theta_max * w);
    const double dr_ds = (1.0 + r * r) * 0.5 * theta_max * smootherstep_prime(u);
    for (int i = 0; i <= N; ++i) {
      const double t = static_cast<double>(i) / N;
      const Vec shape = lasso_shape(t);
      g[j][i] = r * shape;
      a[j][i] = r * lasso_shape_dt(t);
      b[j][i] = dr_ds * shape;
    }
  }
  return AHomotopy::from_data(std::move(model), std::move(g), std::move(a),
                              std::move(b), tol);
}

KernelArrow transgression(const ASphere& sigma, const Vec& e,
                          const RepUpToHomotopy& rep) {
  if (e.size() != rep.complex->dim_E)
    throw std::invalid_argument("transgression: e does not live in the E fiber");
  const Mat phi = homotopy_holonomy(sigma.homotopy, rep, /*tol_hol=*/1.0).phi;
  return KernelArrow{rep.complex, sigma.base(), phi * e, e};
}

namespace {

/// Every-other-node coarsening; requires N, M divisible by 4 to keep the
/// coarse grid even.
bool coarsen(const AHomotopy& h, AHomotopy* out) {
  if (h.N % 4 != 0 || h.M % 4 != 0 || h.N < 16 || h.M < 16) return false;
  const int N = h.N / 2, M = h.M / 2;
  std::vector<std::vector<Vec>> g(M + 1, std::vector<Vec>(N + 1)),
      a(M + 1, std::vector<Vec>(N + 1)), b(M + 1, std::vector<Vec>(N + 1));
  for (int j = 0; j <= M; ++j)
    for (int i = 0; i <= N; ++i) {
      g[j][i] = h.gamma[2 * j][2 * i];
      a[j][i] = h.a[2 * j][2 * i];
      b[j][i] = h.b[2 * j][2 * i];
    }
  *out = AHomotopy::from_data(h.model, std::move(g), std::move(a), std::move(b),
                              /*tol=*/1.0);
  return true;
}

}  // namespace

SpherePeriod sphere_period(const AHomotopy& h, const RepUpToHomotopy& rep,
                           double defect_estimate) {
  SpherePeriod out;
  out.period = homotopy_holonomy(h, rep, /*tol_hol=*/1.0).phi;
  out.norm = spectral_norm(out.period);
  AHomotopy coarse;
  double richardson = 0.0;
  if (coarsen(h, &coarse)) {
    const Mat coarse_phi = homotopy_holonomy(coarse, rep, /*tol_hol=*/1.0).phi;
    richardson = spectral_norm(Mat(out.period - coarse_phi));
  }
  out.error_estimate =
      richardson + defect_estimate + 1e-12 * (1.0 + out.norm);
  out.obstruction = out.norm > 10.0 * out.error_estimate;
  return out;
}

PeriodReport periods(const RepUpToHomotopy& rep, const std::vector<ASphere>& spheres) {
  PeriodReport report;
  for (const auto& s : spheres) {
    report.spheres.push_back(sphere_period(s.homotopy, rep, s.defect_estimate));
    report.obstruction_found |= report.spheres.back().obstruction;
  }
  report.verdict = report.obstruction_found
                       ? "obstruction found"
                       : "no obstruction detected on supplied generators";
  return report;
}

double type1_identity_check(const AHomotopy& h, const RepUpToHomotopy& rep,
                            double eps_inv) {
  const Mat dx = rep.complex->boundary_at(h.source_point());
  const Mat dy = rep.complex->boundary_at(h.target_point());
  if (dx.rows() != dx.cols() || std::abs(dx.determinant()) <= eps_inv ||
      std::abs(dy.determinant()) <= eps_inv)
    throw std::invalid_argument(
        "type1_identity_check: core anchor must be invertible");
  const Mat phi = homotopy_holonomy(h, rep, /*tol_hol=*/1.0).phi;
  const ChainMap hol0 = transport(h.sv_path(), rep);
  const ChainMap hol1 = transport(h.tv_path(), rep);
  const double rE = mat_norm(Mat(dy * phi - (hol1.A_E - hol0.A_E)));
  const double rC = mat_norm(Mat(phi * dx - (hol1.A_C - hol0.A_C)));
  return std::max(rE, rC);
}

Mat type0_period(const AHomotopy& h, const RepUpToHomotopy& rep) {
  const Vec& x0 = h.source_point();
  Vec probe = Vec::Ones(h.model->rank);
  if (mat_norm(rep.complex->boundary_at(x0)) != 0.0 ||
      mat_norm(rep.gammaE_at(x0, probe)) != 0.0 ||
      mat_norm(rep.gammaC_at(x0, probe)) != 0.0)
    throw std::invalid_argument(
        "type0_period: model must have zero boundary and flat trivial connections");
  if (h.N % 2 != 0 || h.M % 2 != 0)
    throw std::invalid_argument("type0_period: grid sizes must be even");
  const auto wN = simpson_weights(h.N);
  const auto wM = simpson_weights(h.M);
  Mat acc = Mat::Zero(rep.complex->dim_C, rep.complex->dim_E);
  for (int j = 0; j <= h.M; ++j) {
    Mat row = Mat::Zero(rep.complex->dim_C, rep.complex->dim_E);
    for (int i = 0; i <= h.N; ++i)
      row += wN[i] * rep.omega_at(h.gamma[j][i], h.a[j][i], h.b[j][i]);
    acc += wM[j] * row;
  }
  return acc;
}

EquivalenceVerdict type0_equivalence_check(const Vec& c0, const APath& a0,
                                           const Vec& c1, const APath& a1,
                                           const Vec& e, const AHomotopy& witness,
                                           const RepUpToHomotopy& rep, double tol,
                                           double tol_hol) {
  EquivalenceVerdict v;
  v.face_residual = std::max(path_distance(witness.sv_path(), a0),
                             path_distance(witness.tv_path(), a1));
  v.e_residual = 0.0;
  const Mat period = type0_period(witness, rep);
  const double r_minus = inf_norm(Vec(c1 - c0 + period * e));
  const double r_plus = inf_norm(Vec(c1 - c0 - period * e));
  if (r_minus <= r_plus) {
    v.c_residual = r_minus;
    v.matched_sign = -1;
  } else {
    v.c_residual = r_plus;
    v.matched_sign = +1;
  }
  v.equivalent = v.face_residual <= tol && v.c_residual <= tol_hol;
  return v;
}

}  // namespace holonomy2
