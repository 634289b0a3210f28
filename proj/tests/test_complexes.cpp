#include <doctest.h>

#include <random>

#include "holonomy2/complexes.hpp"

using namespace holonomy2;

namespace {

double mat_err(const Mat& a, const Mat& b) {
  return a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
}

/// Random complexes in the canonical form d = [[I_r, 0], [0, 0]] and chain
/// maps/homotopies built exactly compatible with them.
struct Gauge {
  std::mt19937_64 rng{0xC0FFEE};
  std::uniform_real_distribution<double> dist{-1.0, 1.0};
  ComplexPtr cx;
  int r = 0;

  explicit Gauge(int rank, int extra_C, int extra_E) : r(rank) {
    Mat d = Mat::Zero(rank + extra_E, rank + extra_C);
    d.topLeftCorner(rank, rank).setIdentity();
    cx = make_constant_complex(d);
  }

  Mat random_mat(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
  }

  Mat random_invertible(int n) {
    for (;;) {
      Mat m = random_mat(n, n) + 2.0 * Mat::Identity(n, n);
      if (n == 0 || std::abs(m.determinant()) > 1e-3) return m;
    }
  }

  /// A_C = [[X, 0], [Z, W]], A_E = [[X, Y], [0, V]] with shared X satisfies
  /// A_E d = d A_C exactly.
  ChainMap random_chain_map(const Vec& x, const Vec& y) {
    const int qC = cx->dim_C - r, qE = cx->dim_E - r;
    const Mat X = random_invertible(r);
    Mat A_C = Mat::Zero(cx->dim_C, cx->dim_C);
    A_C.topLeftCorner(r, r) = X;
    A_C.bottomLeftCorner(qC, r) = random_mat(qC, r);
    A_C.bottomRightCorner(qC, qC) = random_invertible(qC);
    Mat A_E = Mat::Zero(cx->dim_E, cx->dim_E);
    A_E.topLeftCorner(r, r) = X;
    A_E.topRightCorner(r, qE) = random_mat(r, qE);
    A_E.bottomRightCorner(qE, qE) = random_invertible(qE);
    return ChainMap::checked(cx, x, y, A_C, A_E, 0.0);
  }

  /// Random homotopy out of `source`: target derived from a free phi.
  ChainHomotopy random_homotopy(const ChainMap& source) {
    const Mat phi = random_mat(cx->dim_C, cx->dim_E);
    const Mat dx = cx->boundary_at(source.x);
    const Mat dy = cx->boundary_at(source.y);
    ChainMap target = ChainMap::checked(cx, source.x, source.y,
                                        source.A_C + phi * dx,
                                        source.A_E + dy * phi, 1e-12);
    return ChainHomotopy::checked(source, std::move(target), phi, 1e-12);
  }

  Vec pt(double v) { return Vec::Constant(1, v); }
};

}  // namespace

TEST_CASE("chain map composition and inverses") {
  Gauge g(2, 1, 2);
  const Vec x = g.pt(0), y = g.pt(1), z = g.pt(2);

  SUBCASE("identities compose to the identity") {
    auto id = ChainMap::identity(g.cx, x);
    auto prod = compose_chain_maps(id, id);
    CHECK(prod.is_identity(0.0));
  }
  SUBCASE("f composed with its inverse is the identity") {
    auto f = g.random_chain_map(x, y);
    auto prod = compose_chain_maps(invert_chain_map(f), f, 1e-12);
    CHECK(prod.is_identity(1e-12));
  }
  SUBCASE("scalar inverse") {
    auto cx = make_constant_complex(Mat::Identity(1, 1));
    auto f = ChainMap::checked(cx, g.pt(0), g.pt(0), Mat::Constant(1, 1, 2.0),
                               Mat::Constant(1, 1, 2.0), 0.0);
    auto inv = invert_chain_map(f);
    CHECK(inv.A_C(0, 0) == 0.5);
    CHECK(inv.A_E(0, 0) == 0.5);
  }
  SUBCASE("random products keep the chain condition") {
    for (int k = 0; k < 50; ++k) {
      auto f = g.random_chain_map(x, y);
      auto h = g.random_chain_map(y, z);
      auto prod = compose_chain_maps(h, f, 1e-12);
      CHECK(prod.chain_residual() <= 1e-12);
      CHECK(invert_chain_map(prod).chain_residual() <= 1e-10);
    }
  }
  SUBCASE("composition is associative") {
    auto f = g.random_chain_map(x, y);
    auto h = g.random_chain_map(y, z);
    auto k = g.random_chain_map(z, g.pt(3));
    auto lhs = compose_chain_maps(k, compose_chain_maps(h, f, 1e-12), 1e-12);
    auto rhs = compose_chain_maps(compose_chain_maps(k, h, 1e-12), f, 1e-12);
    CHECK(mat_err(lhs.A_C, rhs.A_C) <= 1e-12);
    CHECK(mat_err(lhs.A_E, rhs.A_E) <= 1e-12);
  }
  SUBCASE("endpoint mismatch is rejected") {
    auto f = g.random_chain_map(x, y);
    auto h = g.random_chain_map(z, z);
    CHECK_THROWS_AS(compose_chain_maps(h, f), std::invalid_argument);
  }
  SUBCASE("singular maps are rejected") {
    auto cx = make_constant_complex(Mat::Zero(1, 1));
    CHECK_THROWS_AS(ChainMap::checked(cx, g.pt(0), g.pt(0), Mat::Zero(1, 1),
                                      Mat::Constant(1, 1, 1.0), 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("chain homotopy vertical and horizontal algebra") {
  Gauge g(2, 2, 1);
  const Vec x = g.pt(0), y = g.pt(1), z = g.pt(2);

  SUBCASE("zero homotopies compose to zero") {
    auto f = g.random_chain_map(x, y);
    auto u = ChainHomotopy::vertical_unit(f);
    auto sum = vcomp(u, u);
    CHECK(sum.phi.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("scalar formula: 1 then 2 gives 3") {
    auto cx = make_constant_complex(Mat::Zero(1, 1));
    auto id = ChainMap::identity(cx, x);
    auto h1 = ChainHomotopy::checked(id, id, Mat::Constant(1, 1, 1.0), 0.0);
    auto h2 = ChainHomotopy::checked(id, id, Mat::Constant(1, 1, 2.0), 0.0);
    CHECK(vcomp(h2, h1).phi(0, 0) == 3.0);
  }
  SUBCASE("vcomp result satisfies the homotopy equations") {
    auto f = g.random_chain_map(x, y);
    auto h1 = g.random_homotopy(f);
    auto h2 = g.random_homotopy(h1.target);
    auto sum = vcomp(h2, h1, 1e-12);
    CHECK(sum.homotopy_residual() <= 1e-12);
    CHECK(mat_err(sum.phi, h1.phi + h2.phi) == 0.0);
  }
  SUBCASE("vinv is the vertical inverse") {
    auto f = g.random_chain_map(x, y);
    auto h = g.random_homotopy(f);
    CHECK(vcomp(vinv(h), h, 1e-12).phi.cwiseAbs().maxCoeff() == 0.0);
    CHECK(vinv(ChainHomotopy::vertical_unit(f)).phi.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("whiskering: hcomp with a trivial left factor") {
    auto f = g.random_chain_map(x, y);
    auto h1 = ChainHomotopy::vertical_unit(f);  // phi1 = 0, A0 = A1
    auto f2 = g.random_chain_map(y, z);
    auto h2 = g.random_homotopy(f2);
    auto c = hcomp(h2, h1, 1e-12);
    CHECK(mat_err(c.phi, h2.phi * f.A_E) <= 1e-14);
  }
  SUBCASE("hcomp equals the alternate whiskering") {
    for (int k = 0; k < 25; ++k) {
      auto h1 = g.random_homotopy(g.random_chain_map(x, y));
      auto h2 = g.random_homotopy(g.random_chain_map(y, z));
      auto c = hcomp(h2, h1, 1e-12);
      CHECK(c.homotopy_residual() <= 1e-12);
      const Mat alt = h2.phi * h1.target.A_E + h2.source.A_C * h1.phi;
      CHECK(mat_err(c.phi, alt) <= 1e-12);
    }
  }
  SUBCASE("hinv satisfies the inverse law") {
    auto h = g.random_homotopy(g.random_chain_map(x, y));
    auto hi = hinv(h);
    auto prod = hcomp(hi, h, 1e-12);
    CHECK(prod.phi.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(prod.source.is_identity(1e-12));
    CHECK(prod.homotopy_residual() <= 1e-12);
  }
  SUBCASE("interchange law") {
    for (int k = 0; k < 25; ++k) {
      auto p1 = g.random_homotopy(g.random_chain_map(x, y));
      auto p2 = g.random_homotopy(p1.target);
      auto p3 = g.random_homotopy(g.random_chain_map(y, z));
      auto p4 = g.random_homotopy(p3.target);
      auto lhs = vcomp(hcomp(p4, p2, 1e-12), hcomp(p3, p1, 1e-12), 1e-12);
      auto rhs = hcomp(vcomp(p4, p3, 1e-12), vcomp(p2, p1, 1e-12), 1e-12);
      CHECK(mat_err(lhs.phi, rhs.phi) <= 1e-12);
    }
  }
  SUBCASE("vertical middle-map mismatch is rejected") {
    auto h1 = g.random_homotopy(g.random_chain_map(x, y));
    auto h2 = g.random_homotopy(g.random_chain_map(x, y));
    CHECK_THROWS_AS(vcomp(h2, h1, 1e-12), std::invalid_argument);
  }
}

TEST_CASE("chain maps over a position-dependent boundary") {
  // d(x) = (2 + x) D0: the chain condition ties A_E and A_C across fibers
  Mat D0(2, 3);
  D0 << 1, 0, 0, 0, 1, 0;
  auto cx = std::make_shared<TwoTermComplex>();
  cx->dim_E = 2;
  cx->dim_C = 3;
  cx->boundary = [D0](const Vec& x) { return Mat((2.0 + x[0]) * D0); };
  const Vec x = Vec::Zero(1), y = Vec::Ones(1);
  // A_E d(x) = d(y) A_C with A_C = diag(s, s, w), A_E = diag(1, 1) and
  // s = (2 + x0)/(2 + y0)
  const double s = 2.0 / 3.0;
  Mat A_C = Mat::Zero(3, 3);
  A_C(0, 0) = A_C(1, 1) = s;
  A_C(2, 2) = 1.5;
  auto f = ChainMap::checked(cx, x, y, A_C, Mat::Identity(2, 2), 1e-15);
  CHECK(f.chain_residual() <= 1e-15);
  auto finv = invert_chain_map(f);
  CHECK(finv.chain_residual() <= 1e-15);
  CHECK(compose_chain_maps(finv, f, 1e-12).is_identity(1e-15));
  // a homotopy built from a free phi stays consistent with both fibers
  Mat phi(3, 2);
  phi << 0.25, -0.5, 1.0, 0.75, -0.25, 0.5;
  ChainMap tgt = ChainMap::checked(cx, x, y, Mat(f.A_C + phi * cx->boundary_at(x)),
                                   Mat(f.A_E + cx->boundary_at(y) * phi), 1e-12);
  auto h = ChainHomotopy::checked(f, tgt, phi, 1e-12);
  CHECK(h.homotopy_residual() <= 1e-12);
  CHECK(vcomp(vinv(h), h, 1e-12).phi.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernel groupoid") {
  // dyadic entries keep the group operations exact in floating point
  Mat d(2, 2);
  d << 0.5, 0.25, 0.0, 1.0;
  auto cx = make_constant_complex(d);
  const Vec base = Vec::Zero(1);
  auto arrow = [&](double c0, double c1, double e0, double e1) {
    Vec c(2), e(2);
    c << c0, c1;
    e << e0, e1;
    return KernelArrow{cx, base, c, e};
  };

  SUBCASE("units act trivially") {
    auto u = arrow(0, 0, 0.5, -0.25);
    auto prod = kernel_mult(u, u);
    CHECK((prod.c - u.c).cwiseAbs().maxCoeff() == 0.0);
    CHECK((prod.e - u.e).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("two-sided inverses, exactly") {
    auto a = arrow(0.5, -0.75, 0.25, 1.0);
    auto left = kernel_mult(kernel_inv(a), a);
    CHECK(left.c.cwiseAbs().maxCoeff() == 0.0);
    CHECK((left.e - a.e).cwiseAbs().maxCoeff() == 0.0);
    auto right = kernel_mult(a, kernel_inv(a));
    CHECK(right.c.cwiseAbs().maxCoeff() == 0.0);
    CHECK((right.source() - a.target()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("associative and unital, exactly") {
    auto a = arrow(0.5, 0.25, 1.0, 0.0);
    auto b = KernelArrow{cx, base, (Vec(2) << -0.25, 0.5).finished(), a.target()};
    auto c = KernelArrow{cx, base, (Vec(2) << 1.5, -0.5).finished(), b.target()};
    auto lhs = kernel_mult(kernel_mult(c, b), a);
    auto rhs = kernel_mult(c, kernel_mult(b, a));
    CHECK((lhs.c - rhs.c).cwiseAbs().maxCoeff() == 0.0);
    CHECK((lhs.e - rhs.e).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("abelian fiber: c components add") {
    auto cx0 = make_constant_complex(Mat::Zero(2, 2));
    Vec e = (Vec(2) << 0.5, 0.5).finished();
    KernelArrow a{cx0, base, (Vec(2) << 0.25, -0.5).finished(), e};
    KernelArrow b{cx0, base, (Vec(2) << 1.0, 0.75).finished(), e};
    auto p = kernel_mult(b, a);
    CHECK((p.c - (a.c + b.c)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.e - e).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("composability and fiber mismatches are rejected") {
    auto a = arrow(0.5, 0.25, 1.0, 0.0);
    auto bad = arrow(0.0, 0.0, 9.0, 9.0);
    CHECK_THROWS_AS(kernel_mult(bad, a), std::invalid_argument);
    KernelArrow other_fiber{cx, Vec::Constant(1, 2.0), a.c, a.target()};
    CHECK_THROWS_AS(kernel_mult(other_fiber, a), std::invalid_argument);
  }
}

TEST_CASE("K-path integration") {
  auto cx = make_constant_complex(Mat::Identity(2, 2));
  const Vec base = Vec::Zero(1);
  Vec c0 = (Vec(2) << 1.0, -2.0).finished();
  Vec e0 = (Vec(2) << 0.5, 0.5).finished();

  SUBCASE("constant path maps to itself") {
    std::vector<KernelArrow> samples(11, KernelArrow{cx, base, c0, e0});
    auto out = integrate_kernel_path(samples);
    CHECK((out.c - c0).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((out.e - e0).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("linear path integrates to half") {
    // oracle: the integral of s over [0,1] is 1/2; Simpson is exact here
    std::vector<KernelArrow> samples;
    const int n = 100;
    for (int i = 0; i <= n; ++i)
      samples.push_back(KernelArrow{cx, base, Vec(double(i) / n * c0), e0});
    auto out = integrate_kernel_path(samples);
    CHECK((out.c - 0.5 * c0).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("full sine period integrates to zero") {
    // oracle: the integral of sin(2 pi s) over one period is 0
    std::vector<KernelArrow> samples;
    const int n = 100;
    for (int i = 0; i <= n; ++i)
      samples.push_back(
          KernelArrow{cx, base, Vec(std::sin(2.0 * M_PI * i / n) * c0), e0});
    auto out = integrate_kernel_path(samples);
    CHECK(out.c.cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((out.e - e0).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("odd interval counts are handled") {
    std::vector<KernelArrow> samples;
    const int n = 99;
    for (int i = 0; i <= n; ++i)
      samples.push_back(KernelArrow{cx, base, Vec(double(i) / n * c0), e0});
    auto out = integrate_kernel_path(samples);
    CHECK((out.c - 0.5 * c0).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("empty and mixed-fiber grids are rejected") {
    CHECK_THROWS_AS(integrate_kernel_path({}), std::invalid_argument);
    std::vector<KernelArrow> mixed{KernelArrow{cx, base, c0, e0},
                                   KernelArrow{cx, Vec::Constant(1, 1.0), c0, e0}};
    CHECK_THROWS_AS(integrate_kernel_path(mixed), std::invalid_argument);
  }
}
