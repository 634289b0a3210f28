#include <doctest.h>

#include <sstream>

#include "holonomy2/paths.hpp"
#include "holonomy2/serialization.hpp"

using namespace holonomy2;

namespace {
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

bool grids_equal(const APath& p, const APath& q) {
  if (p.N != q.N) return false;
  for (int i = 0; i <= p.N; ++i)
    if (p.gamma[i] != q.gamma[i] || p.a[i] != q.a[i]) return false;
  return true;
}
}  // namespace

TEST_CASE("unit and inverse paths") {
  auto b = builtin_model("so3_string");
  const Vec x = Vec::Zero(1);

  SUBCASE("the inverse of a unit path is the unit path") {
    auto u = unit_path(b.model, x, 40);
    CHECK(grids_equal(inverse_path(u), u));
    CHECK(u.residual == 0.0);
  }
  SUBCASE("inversion is an involution, bit-exact") {
    auto p = constant_path(b.model, x, v3(0.3, -0.7, 1.1), 40);
    CHECK(grids_equal(inverse_path(inverse_path(p)), p));
  }
  SUBCASE("inverse of a constant path is the negated constant") {
    auto p = constant_path(b.model, x, v3(0.5, 0.25, -1.0), 40);
    auto q = inverse_path(p);
    for (int i = 0; i <= q.N; ++i)
      CHECK((q.a[i] + v3(0.5, 0.25, -1.0)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("base-curve integration follows the anchor") {
  auto ts = builtin_model("tangent_sphere_type1");
  Vec x0 = (Vec(2) << 0.1, -0.2).finished();
  // rho = id: constant a = xi drifts the base linearly; oracle is x0 + t xi
  Vec xi = (Vec(2) << 0.4, 0.3).finished();
  auto p = constant_path(ts.model, x0, xi, 100);
  CHECK((p.target() - (x0 + xi)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(p.residual <= 1e-4);
}

TEST_CASE("concatenation") {
  auto b = builtin_model("so3_string");
  const Vec x = Vec::Zero(1);

  SUBCASE("unit concatenated with unit stays a unit") {
    auto u = unit_path(b.model, x, 40);
    auto c = concat_paths(u, u);
    CHECK(c.N == 80);
    for (int i = 0; i <= c.N; ++i) CHECK(c.a[i].cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("a path against its inverse closes up") {
    auto p = constant_path(b.model, x, v3(1, 0, 0), 40);
    auto c = concat_paths(inverse_path(p), p);
    CHECK((c.source() - p.source()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((c.target() - p.source()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("two constant legs stay parallel to their directions") {
    auto p = constant_path(b.model, x, v3(1, 0, 0), 40);
    auto q = constant_path(b.model, x, v3(0, 2, 0), 40);
    auto c = concat_paths(q, p);
    for (int i = 0; i < 40; ++i) {
      CHECK(std::abs(c.a[i][1]) == 0.0);  // first leg along e1
      CHECK(std::abs(c.a[41 + i][0]) == 0.0);  // second leg along e2
    }
    // speed-doubling: the time-average of each leg equals 2 xi in the mean
    Vec sum = Vec::Zero(3);
    for (int i = 0; i <= c.N; ++i) sum += c.a[i];
    CHECK(std::abs(sum[0] / (c.N + 1) - 1.0) <= 0.05);
  }
  SUBCASE("endpoint mismatch is rejected") {
    auto ts = builtin_model("tangent_sphere_type1");
    Vec x0 = Vec::Zero(2), xi = (Vec(2) << 1.0, 0.0).finished();
    auto p = constant_path(ts.model, x0, xi, 40);
    CHECK_THROWS_AS(concat_paths(p, p, 1e-8), std::invalid_argument);
  }
}

TEST_CASE("reparametrization") {
  auto b = builtin_model("so3_string");
  const Vec x = Vec::Zero(1);

  SUBCASE("unit path is fixed") {
    auto u = unit_path(b.model, x, 40);
    CHECK(grids_equal(reparametrize(u, smoothstep_reparam()), u));
  }
  SUBCASE("flat ends are exact") {
    auto p = constant_path(b.model, x, v3(0, 0, 1), 80);
    auto q = reparametrize(p, smoothstep_reparam());
    CHECK(q.a.front().cwiseAbs().maxCoeff() == 0.0);
    CHECK(q.a.back().cwiseAbs().maxCoeff() == 0.0);
    auto q2 = reparametrize(p, flat_cutoff_reparam());
    CHECK(q2.a.front().cwiseAbs().maxCoeff() == 0.0);
    CHECK(q2.a.back().cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("identity-like tau keeps grid values") {
    Reparam id{[](double t) { return t; }, [](double) { return 1.0; }};
    auto p = constant_path(b.model, x, v3(0.2, 0.4, -0.1), 60);
    CHECK(grids_equal(reparametrize(p, id), p));
  }
}

TEST_CASE("homotopy generation") {
  auto b = builtin_model("so3_string");
  const Vec x = Vec::Zero(1);
  auto p = constant_path(b.model, x, v3(0.2, -0.4, 1.0), 80);

  SUBCASE("zero variation gives the vertical unit") {
    auto h = generate_homotopy(
        p, std::vector<std::vector<Vec>>(41, std::vector<Vec>(81, Vec::Zero(3))));
    for (int i = 0; i <= h.N; ++i) {
      CHECK((h.a.back()[i] - p.a[i]).cwiseAbs().maxCoeff() == 0.0);
      CHECK((h.gamma.back()[i] - p.gamma[i]).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("target path self-converges under refinement") {
    // oracle: the same flow integrated at 4x resolution
    auto coarse = generate_homotopy(
        p, sinusoidal_variation(v3(0.4, 0.1, -0.2), 80, 40));
    auto pf = constant_path(b.model, x, v3(0.2, -0.4, 1.0), 320);
    auto fine = generate_homotopy(
        pf, sinusoidal_variation(v3(0.4, 0.1, -0.2), 320, 160));
    double worst = 0.0;
    for (int i = 0; i <= 80; ++i)
      worst = std::max(worst,
                       (coarse.a.back()[i] - fine.a.back()[4 * i]).cwiseAbs().maxCoeff());
    CHECK(worst <= 1e-6);
  }
  SUBCASE("morphism residual decreases at second order under refinement") {
    auto c1 = generate_homotopy(
        constant_path(b.model, x, v3(0.2, -0.4, 1.0), 100),
        sinusoidal_variation(v3(0.4, 0.1, -0.2), 100, 50));
    auto c2 = generate_homotopy(
        constant_path(b.model, x, v3(0.2, -0.4, 1.0), 200),
        sinusoidal_variation(v3(0.4, 0.1, -0.2), 200, 100));
    CHECK(c1.residual / c2.residual >= 3.0);
  }
  SUBCASE("variation must vanish at t edges") {
    std::vector<std::vector<Vec>> bad(41, std::vector<Vec>(81, Vec::Zero(3)));
    bad[5][0] = v3(1, 0, 0);
    CHECK_THROWS_AS(generate_homotopy(p, bad), std::invalid_argument);
  }
}

TEST_CASE("thinness") {
  auto b = builtin_model("so3_string");
  const Vec x = Vec::Zero(1);
  auto p = constant_path(b.model, x, v3(0.5, -0.2, 0.9), 80);

  SUBCASE("identity tau gives b = 0") {
    Reparam id{[](double t) { return t; }, [](double) { return 1.0; }};
    auto h = thin_reparam_homotopy(p, id, 20);
    double bmax = 0.0;
    for (const auto& row : h.b)
      for (const auto& v : row) bmax = std::max(bmax, v.cwiseAbs().maxCoeff());
    CHECK(bmax == 0.0);
  }
  SUBCASE("reparametrization families are thin") {
    auto h = thin_reparam_homotopy(p, smoothstep_reparam(), 20);
    CHECK(is_thin(h));
    CHECK(thinness_defect(h) <= 1e-12);
  }
  SUBCASE("vertical units are thin") {
    CHECK(is_thin(vertical_unit(p, 10)));
  }
  SUBCASE("a generic variation is not thin") {
    auto h = generate_homotopy(p, sinusoidal_variation(v3(0, 0.8, 0.1), 80, 40));
    CHECK_FALSE(is_thin(h));
    CHECK(thinness_defect(h) >= 0.1);
  }
}

TEST_CASE("homotopy concatenations and inverses") {
  auto b = builtin_model("so3_string");
  const Vec x = Vec::Zero(1);
  auto p = constant_path(b.model, x, v3(0.3, 0.1, -0.6), 64);
  auto h1 = generate_homotopy(p, sinusoidal_variation(v3(0.2, -0.3, 0.1), 64, 40));
  auto h2 = generate_homotopy(h1.tv_path(),
                              sinusoidal_variation(v3(-0.1, 0.2, 0.25), 64, 40));

  SUBCASE("vertical inverse is an involution, bit-exact") {
    auto hh = vinv_homotopy(vinv_homotopy(h1));
    for (int j = 0; j <= h1.M; ++j)
      for (int i = 0; i <= h1.N; ++i) {
        CHECK((hh.a[j][i] - h1.a[j][i]).cwiseAbs().maxCoeff() == 0.0);
        CHECK((hh.b[j][i] - h1.b[j][i]).cwiseAbs().maxCoeff() == 0.0);
      }
  }
  SUBCASE("vertical inverse swaps the vertical faces") {
    auto vi = vinv_homotopy(h1);
    CHECK(path_distance(vi.sv_path(), h1.tv_path()) == 0.0);
    CHECK(path_distance(vi.tv_path(), h1.sv_path()) == 0.0);
  }
  SUBCASE("horizontal inverse is an involution, bit-exact") {
    auto hh = hinv_homotopy(hinv_homotopy(h1));
    for (int j = 0; j <= h1.M; ++j)
      for (int i = 0; i <= h1.N; ++i)
        CHECK((hh.a[j][i] - h1.a[j][i]).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("vconcat stacks and doubles the s-speed") {
    auto c = vconcat(h2, h1);
    CHECK(c.M == 2 * h1.M);
    CHECK(c.N == h1.N);
    CHECK(c.residual <= c.tol);
  }
  SUBCASE("face mismatch is rejected") {
    CHECK_THROWS_AS(vconcat(h1, h2, 1e-9), std::invalid_argument);
  }
  SUBCASE("hconcat of horizontal units is a horizontal unit") {
    auto u = horizontal_unit(b.model, x, 40, 20);
    auto c = hconcat(u, u);
    double amax = 0.0, bmax = 0.0;
    for (const auto& row : c.a)
      for (const auto& v : row) amax = std::max(amax, v.cwiseAbs().maxCoeff());
    for (const auto& row : c.b)
      for (const auto& v : row) bmax = std::max(bmax, v.cwiseAbs().maxCoeff());
    CHECK(amax == 0.0);
    CHECK(bmax == 0.0);
  }
}

TEST_CASE("columnar serialization round-trips") {
  auto ts = builtin_model("tangent_sphere_type1");
  Vec x0 = (Vec(2) << 0.15, -0.1).finished();
  auto p = path_from_a(
      ts.model, x0,
      [](double t) { return Vec((Vec(2) << std::sin(t), 0.2 * t).finished()); }, 48);

  SUBCASE("paths") {
    std::ostringstream os;
    write_path(p, os);
    std::istringstream is(os.str());
    auto q = read_path(ts.model, is);
    CHECK(grids_equal(p, q));
  }
  SUBCASE("homotopies") {
    auto h = generate_homotopy(
        p, sinusoidal_variation((Vec(2) << 0.2, -0.1).finished(), 48, 12));
    std::ostringstream os;
    write_homotopy(h, os);
    std::istringstream is(os.str());
    auto g = read_homotopy(ts.model, is);
    CHECK(g.N == h.N);
    CHECK(g.M == h.M);
    double worst = 0.0;
    for (int j = 0; j <= h.M; ++j)
      for (int i = 0; i <= h.N; ++i) {
        worst = std::max(worst, (g.gamma[j][i] - h.gamma[j][i]).cwiseAbs().maxCoeff());
        worst = std::max(worst, (g.a[j][i] - h.a[j][i]).cwiseAbs().maxCoeff());
        worst = std::max(worst, (g.b[j][i] - h.b[j][i]).cwiseAbs().maxCoeff());
      }
    CHECK(worst == 0.0);
  }
  SUBCASE("dimension mismatches are rejected") {
    auto so3 = builtin_model("so3_string");
    std::ostringstream os;
    write_path(p, os);
    std::istringstream is(os.str());
    CHECK_THROWS_AS(read_path(so3.model, is), std::invalid_argument);
  }
}

TEST_CASE("constructor rejects inconsistent data") {
  auto ts = builtin_model("tangent_sphere_type1");
  std::vector<Vec> gamma(41, Vec::Zero(2)), a(41, (Vec(2) << 1.0, 0.0).finished());
  // gamma constant but a nonzero under rho = id: violates the A-path condition
  CHECK_THROWS_AS(APath::from_data(ts.model, gamma, a, 1e-3), std::invalid_argument);
}
