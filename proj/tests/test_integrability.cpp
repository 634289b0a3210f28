#include <doctest.h>

#include "holonomy2/integrability.hpp"

using namespace holonomy2;

namespace {
double inf(const Vec& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }
double mat_err(const Mat& a, const Mat& b) {
  return a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
}

/// A-sphere on the abelian (point-base) model from a potential
/// F(t, s) = sin(pi t) (s (1-s))^2 v: a = dF/dt, b = dF/ds.
ASphere abelian_sphere(const ModelBundle& bundle, int N, int M) {
  const int r = bundle.model->rank;
  Vec v = Vec::LinSpaced(r, 0.5, 1.0);
  std::vector<std::vector<Vec>> g(M + 1, std::vector<Vec>(N + 1, Vec::Zero(1))),
      a(M + 1, std::vector<Vec>(N + 1)), b(M + 1, std::vector<Vec>(N + 1));
  for (int j = 0; j <= M; ++j) {
    const double s = static_cast<double>(j) / M;
    const double w = s * (1.0 - s) * s * (1.0 - s);
    const double dw = 2.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
    for (int i = 0; i <= N; ++i) {
      const double t = static_cast<double>(i) / N;
      a[j][i] = M_PI * std::cos(M_PI * t) * w * v;
      b[j][i] = (i == 0 || i == N) ? Vec(Vec::Zero(r))
                                   : Vec(std::sin(M_PI * t) * dw * v);
    }
  }
  for (int i = 0; i <= N; ++i) {
    a.front()[i].setZero();
    a.back()[i].setZero();
  }
  return ASphere::from_homotopy(
      AHomotopy::from_data(bundle.model, std::move(g), std::move(a), std::move(b),
                           1e-2));
}
}  // namespace

TEST_CASE("A-sphere validation") {
  auto pq = builtin_model("prequantization_s2");
  SUBCASE("the built-in cover is a valid sphere") {
    SphereCoverParams coarse;
    coarse.tol = 0.05;  // structural check only; 64^2 underresolves the sweep
    auto s = full_sphere_cover(pq.model, 64, 64, coarse);
    CHECK(s.defect_estimate > 0.0);
    CHECK(inf(s.base()) == 0.0);
  }
  SUBCASE("nonvanishing vertical faces are rejected") {
    Vec x0 = Vec::Zero(2);
    auto p = constant_path(pq.model, x0, (Vec(2) << 0.3, 0.1).finished(), 32);
    auto h = vertical_unit(p, 16);
    CHECK_THROWS_AS(ASphere::from_homotopy(h), std::invalid_argument);
  }
}

TEST_CASE("transgression") {
  auto pq = builtin_model("prequantization_s2");
  auto sphere = full_sphere_cover(pq.model, 400, 400);

  SUBCASE("zero vector maps to the zero arrow") {
    auto k = transgression(sphere, Vec::Zero(1), pq.rep);
    CHECK(inf(k.c) == 0.0);
    CHECK(inf(k.e) == 0.0);
  }
  SUBCASE("thin sphere transgresses to a unit arrow") {
    auto thin = ASphere::from_homotopy(
        horizontal_unit(pq.model, Vec::Zero(2), 32, 16));
    auto k = transgression(thin, Vec::Ones(1), pq.rep);
    CHECK(inf(k.c) == 0.0);
    CHECK(k.e(0) == 1.0);
  }
  SUBCASE("full cover transgresses to the sphere area") {
    // oracle: area of the unit sphere = 4 pi
    auto k = transgression(sphere, Vec::Ones(1), pq.rep);
    CHECK(std::abs(k.c(0) - 4.0 * M_PI) <= 1e-3);
    CHECK(k.e(0) == 1.0);
  }
  SUBCASE("transgression is linear in e") {
    auto k1 = transgression(sphere, Vec::Constant(1, 2.0), pq.rep);
    auto k2 = transgression(sphere, Vec::Constant(1, -3.0), pq.rep);
    auto ks = transgression(sphere, Vec::Constant(1, -1.0), pq.rep);
    CHECK(std::abs(k1.c(0) + k2.c(0) - ks.c(0)) <= 1e-12);
  }
  SUBCASE("fiber mismatch is rejected") {
    CHECK_THROWS_AS(transgression(sphere, Vec::Zero(2), pq.rep),
                    std::invalid_argument);
  }
}

TEST_CASE("periods and the integrability verdict") {
  SUBCASE("prequantization: obstruction found at 4 pi") {
    auto pq = builtin_model("prequantization_s2");
    auto report = periods(pq.rep, {full_sphere_cover(pq.model, 400, 400)});
    CHECK(report.obstruction_found);
    CHECK(report.verdict == "obstruction found");
    CHECK(std::abs(report.spheres[0].norm - 4.0 * M_PI) <= 1e-3);
  }
  SUBCASE("type 1: periods vanish within the error estimate") {
    auto ts = builtin_model("tangent_sphere_type1");
    auto report = periods(ts.rep, {full_sphere_cover(ts.model, 400, 400)});
    CHECK_FALSE(report.obstruction_found);
    CHECK(report.spheres[0].norm <= report.spheres[0].error_estimate);
  }
  SUBCASE("abelian model with zero omega: period exactly zero") {
    auto ab = builtin_model("abelian");
    auto report = periods(ab.rep, {abelian_sphere(ab, 64, 64)});
    CHECK(report.spheres[0].norm == 0.0);
    CHECK_FALSE(report.obstruction_found);
  }
  SUBCASE("vertical inverse negates the period") {
    auto pq = builtin_model("prequantization_s2");
    auto sphere = full_sphere_cover(pq.model, 200, 200);
    auto fwd = homotopy_holonomy(sphere.homotopy, pq.rep, 1.0).phi;
    auto bwd = homotopy_holonomy(vinv_homotopy(sphere.homotopy), pq.rep, 1.0).phi;
    CHECK(mat_err(bwd, Mat(-fwd)) <= 1e-10);
  }
}

TEST_CASE("vertical target shifts c by the sphere period") {
  auto pq = builtin_model("prequantization_s2");
  auto sphere = full_sphere_cover(pq.model, 400, 400);
  const Vec e0 = Vec::Constant(1, 0.5);
  const Vec c0 = Vec::Constant(1, 1.25);
  auto tgt = two_vtgt(TransTwoMor{c0, sphere.homotopy, e0}, pq.rep);
  // the c component moves by the full sphere area times e
  CHECK(std::abs(std::abs((tgt.c - c0)(0)) - 4.0 * M_PI * 0.5) <= 1e-3);
}

TEST_CASE("type-1 identities") {
  auto ts = builtin_model("tangent_sphere_type1");
  Vec x0 = (Vec(2) << 0.2, -0.1).finished();
  auto p = path_from_a(
      ts.model, x0,
      [](double t) {
        return Vec((Vec(2) << 0.4 * std::cos(0.5 * M_PI * t), -0.25).finished());
      },
      200);

  SUBCASE("thin homotopies satisfy the identity trivially") {
    auto thin = thin_reparam_homotopy(p, smoothstep_reparam(), 100);
    CHECK(type1_identity_check(thin, ts.rep) <= 1e-8);
  }
  SUBCASE("vertical units satisfy it exactly") {
    CHECK(type1_identity_check(vertical_unit(p, 100), ts.rep) == 0.0);
  }
  SUBCASE("double integral equals the transport difference") {
    auto h = generate_homotopy(
        p, sinusoidal_variation((Vec(2) << 0.35, 0.2).finished(), 200, 100));
    CHECK(type1_identity_check(h, ts.rep) <= 1e-5);
  }
  SUBCASE("models without invertible boundary are rejected") {
    auto pq = builtin_model("prequantization_s2");
    auto u = horizontal_unit(pq.model, Vec::Zero(2), 32, 16);
    CHECK_THROWS_AS(type1_identity_check(u, pq.rep), std::invalid_argument);
  }
}

TEST_CASE("type-0 periods") {
  auto pq = builtin_model("prequantization_s2");

  SUBCASE("plain double integral matches the holonomy bitwise") {
    auto sphere = full_sphere_cover(pq.model, 200, 200);
    const Mat direct = type0_period(sphere.homotopy, pq.rep);
    const Mat via_hol = homotopy_holonomy(sphere.homotopy, pq.rep, 1.0).phi;
    CHECK(mat_err(direct, via_hol) <= 1e-10);
  }
  SUBCASE("hemisphere sweeps half the area") {
    // oracle: hemisphere area = 2 pi
    auto half = sphere_cap_sweep(pq.model, 0.5 * M_PI, 400, 400);
    CHECK(std::abs(type0_period(half, pq.rep)(0, 0) - 2.0 * M_PI) <= 1e-3);
  }
  SUBCASE("zero omega integrates to zero") {
    auto ab = builtin_model("abelian");
    CHECK(type0_period(abelian_sphere(ab, 64, 64).homotopy, ab.rep)
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("non-type-0 models are rejected") {
    auto ts = builtin_model("tangent_sphere_type1");
    SphereCoverParams coarse;
    coarse.tol = 0.05;
    auto sphere = full_sphere_cover(ts.model, 64, 64, coarse);
    CHECK_THROWS_AS(type0_period(sphere.homotopy, ts.rep), std::invalid_argument);
  }
}

TEST_CASE("type-0 equivalence relation") {
  auto pq = builtin_model("prequantization_s2");
  auto sphere = full_sphere_cover(pq.model, 400, 400);
  const Mat period = type0_period(sphere.homotopy, pq.rep);
  const Vec e = Vec::Constant(1, 0.5);
  const Vec c0 = Vec::Constant(1, 0.25);
  const APath a0 = sphere.homotopy.sv_path();
  const APath a1 = sphere.homotopy.tv_path();

  SUBCASE("shifted by the period: equivalent") {
    const Vec c1 = c0 + period * e;
    auto v = type0_equivalence_check(c0, a0, c1, a1, e, sphere.homotopy, pq.rep,
                                     1e-6, 1e-6);
    CHECK(v.equivalent);
  }
  SUBCASE("zero witness with equal c: equivalent") {
    auto u = horizontal_unit(pq.model, Vec::Zero(2), 32, 16);
    auto v = type0_equivalence_check(c0, u.sv_path(), c0, u.tv_path(), e, u,
                                     pq.rep, 1e-6, 1e-9);
    CHECK(v.equivalent);
    CHECK(v.c_residual == 0.0);
  }
  SUBCASE("off by one: not equivalent") {
    const Vec c1 = c0 + period * e + Vec::Ones(1);
    auto v = type0_equivalence_check(c0, a0, c1, a1, e, sphere.homotopy, pq.rep,
                                     1e-6, 1e-6);
    CHECK_FALSE(v.equivalent);
  }
}
