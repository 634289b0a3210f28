#include "holonomy2/scenarios.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "holonomy2/serialization.hpp"

namespace holonomy2 {

namespace {

double inf_norm(const Vec& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }
double mat_norm(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Vec chart_center(const AlgebroidModel& model) {
  if (model.base_dim == 2) {
    Vec x(2);
    x << 0.2, -0.1;
    return x;
  }
  return Vec::Zero(model.base_dim);
}

Vec default_direction(int rank, int which) {
  // fixed non-parallel probe directions, truncated/padded to the rank
  static const double table[3][4] = {{0.3, -0.2, 0.9, 0.1},
                                     {0.4, 0.3, -0.25, 0.2},
                                     {-0.15, 0.45, 0.2, -0.3}};
  Vec v = Vec::Zero(rank);
  for (int i = 0; i < rank && i < 4; ++i) v[i] = table[which % 3][i];
  return v;
}

Vec parse_components(const std::string& csv, int rank, const std::string& what) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (...) {
      throw std::invalid_argument(what + ": bad component '" + tok + "'");
    }
  }
  if (static_cast<int>(vals.size()) != rank)
    throw std::invalid_argument(what + ": expected " + std::to_string(rank) +
                                " components");
  return Eigen::Map<const Vec>(vals.data(), rank);
}

ModelBundle load_bundle(const RunConfig& cfg) {
  return builtin_model(cfg.model_name, cfg.model_params);
}

Mat hol_of(const AHomotopy& h, const RepUpToHomotopy& rep) {
  return homotopy_holonomy(h, rep, /*tol_hol=*/1.0).phi;
}

std::string format_matrix(const Mat& m) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) os << "; ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << " ";
      os << m(r, c);
    }
  }
  return os.str();
}

}  // namespace

ScenarioInputs scenario_inputs(const ModelBundle& bundle, int N, double tol) {
  ScenarioInputs in;
  const Vec x0 = chart_center(*bundle.model);
  const Vec xi = default_direction(bundle.model->rank, 0);
  const Vec xi2 = default_direction(bundle.model->rank, 1);
  in.p = path_from_a(
      bundle.model, x0,
      [&](double t) { return Vec(std::cos(0.5 * M_PI * t) * xi); }, N, tol);
  in.q = path_from_a(
      bundle.model, in.p.target(),
      [&](double t) { return Vec(xi2 + std::sin(M_PI * t) * 0.3 * xi); }, N, tol);
  in.eta1 = default_direction(bundle.model->rank, 1) * 0.8;
  in.eta2 = default_direction(bundle.model->rank, 2);
  return in;
}

APath build_path(const ModelBundle& bundle, const std::string& spec,
                 const RunConfig& cfg) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const Vec x0 = chart_center(*bundle.model);
  if (kind == "unit") return unit_path(bundle.model, x0, cfg.N);
  if (kind == "constant") {
    const Vec xi = (arg.empty() || arg == "auto")
                       ? default_direction(bundle.model->rank, 0)
                       : parse_components(arg, bundle.model->rank, "path spec");
    return constant_path(bundle.model, x0, xi, cfg.N, cfg.tol_path);
  }
  if (kind == "file") return read_path_file(bundle.model, arg, cfg.tol_path);
  throw std::invalid_argument("unknown path spec '" + spec + "'");
}

AHomotopy build_homotopy(const ModelBundle& bundle, const std::string& spec,
                         const RunConfig& cfg) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "sin") {
    const Vec eta = (arg.empty() || arg == "auto")
                        ? Vec(0.8 * default_direction(bundle.model->rank, 1))
                        : parse_components(arg, bundle.model->rank, "variation spec");
    const APath base = build_path(bundle, cfg.path_spec, cfg);
    return generate_homotopy(base, sinusoidal_variation(eta, cfg.N, cfg.M),
                             cfg.tol_path);
  }
  if (kind == "thin") {
    const APath base = build_path(bundle, cfg.path_spec, cfg);
    return thin_reparam_homotopy(base, smoothstep_reparam(), cfg.M);
  }
  if (kind == "sphere") {
    SphereCoverParams params;
    params.tol = std::max(cfg.tol_path, params.tol);
    if (arg == "full" || arg.empty())
      return full_sphere_cover(bundle.model, cfg.N, cfg.M, params).homotopy;
    if (arg == "half")
      return sphere_cap_sweep(bundle.model, 0.5 * M_PI, cfg.N, cfg.M, params.tol);
    throw std::invalid_argument("unknown sphere coverage '" + arg + "'");
  }
  if (kind == "file") return read_homotopy_file(bundle.model, arg, cfg.tol_path);
  throw std::invalid_argument("unknown homotopy spec '" + spec + "'");
}

Report run_validate_model(const RunConfig& cfg) {
  Report rep;
  rep.subcommand = "validate-model";
  rep.config_echo = cfg.echo();
  const ModelBundle bundle = load_bundle(cfg);
  const auto samples = default_samples(*bundle.model, cfg.samples);
  const ValidationReport vm =
      validate_model(*bundle.model, samples, cfg.h_fd, cfg.tol_model);
  const ValidationReport vr =
      validate_ruth(*bundle.model, bundle.rep, samples, cfg.h_fd, cfg.tol_model);
  for (const auto& ax : vm.axioms)
    rep.checks.push_back(Check{"model." + ax.name, ax.residual, ax.tolerance, ax.pass});
  for (const auto& ax : vr.axioms)
    rep.checks.push_back(Check{"action." + ax.name, ax.residual, ax.tolerance, ax.pass});
  rep.add_result("sample_count", static_cast<double>(samples.size()));
  rep.finalize();
  return rep;
}

Report run_transport(const RunConfig& cfg) {
  Report rep;
  rep.subcommand = "transport";
  rep.config_echo = cfg.echo();
  const ModelBundle bundle = load_bundle(cfg);

  const std::string spec =
      cfg.input_path.empty() ? cfg.path_spec : "file:" + cfg.input_path;
  auto path_at = [&](int n) {
    RunConfig c = cfg;
    c.N = n;
    return build_path(bundle, spec, c);
  };
  const APath p = path_at(cfg.N);
  const ChainMap hol = transport(p, bundle.rep, cfg.tol_transport);
  rep.add_result("A_E", format_matrix(hol.A_E));
  rep.add_result("A_C", format_matrix(hol.A_C));
  rep.checks.push_back(
      Check::of("chain_condition", hol.chain_residual(), cfg.tol_transport));

  if (cfg.N % 4 == 0 && cfg.N >= 16) {
    const ChainMap h2 = transport(path_at(cfg.N / 2), bundle.rep, 1.0);
    const ChainMap h4 = transport(path_at(cfg.N / 4), bundle.rep, 1.0);
    const double e1 = mat_norm(Mat(hol.A_E - h2.A_E)) + mat_norm(Mat(hol.A_C - h2.A_C));
    const double e2 = mat_norm(Mat(h2.A_E - h4.A_E)) + mat_norm(Mat(h2.A_C - h4.A_C));
    rep.add_result("richardson_error_estimate", e1);
    if (e1 > 0.0 && e2 > 0.0) {
      const double order = std::log2(e2 / e1);
      rep.add_result("observed_order", order);
      rep.checks.push_back(Check::at_least("rk4_order", order, 3.8));
    }
  }
  rep.finalize();
  return rep;
}

Report run_holonomy(const RunConfig& cfg) {
  Report rep;
  rep.subcommand = "holonomy";
  rep.config_echo = cfg.echo();
  const ModelBundle bundle = load_bundle(cfg);
  const std::string spec =
      cfg.input_path.empty() ? cfg.variation_spec : "file:" + cfg.input_path;
  const AHomotopy h = build_homotopy(bundle, spec, cfg);
  const ChainHomotopy hol = homotopy_holonomy(h, bundle.rep, /*tol_hol=*/1.0);
  const SpherePeriod est = sphere_period(h, bundle.rep);
  rep.add_result("hol_sigma", format_matrix(hol.phi));
  rep.add_result("richardson_error_estimate", est.error_estimate);
  // gate against the tolerance the object was constructed with (sphere
  // sweeps carry a looser residual class than generic smooth data)
  rep.checks.push_back(Check::of("grid_residual", h.residual, h.tol));
  rep.checks.push_back(
      Check::of("chain_homotopy_equations", hol.homotopy_residual(), cfg.tol_hol));
  rep.finalize();
  return rep;
}

namespace {

/// Appendix-style law suite on generated homotopies for one model.
void append_law_checks(Report& rep, const ModelBundle& bundle, const RunConfig& cfg) {
  const auto& rp = bundle.rep;
  const ScenarioInputs in = scenario_inputs(bundle, cfg.N, cfg.tol_path);

  // transport functoriality
  {
    const ChainMap tp = transport(in.p, rp, cfg.tol_transport);
    const ChainMap tq = transport(in.q, rp, cfg.tol_transport);
    const ChainMap tcat = transport(concat_paths(in.q, in.p), rp, 1.0);
    const ChainMap comp = compose_chain_maps(tq, tp, 1.0);
    const double r = std::max(mat_norm(Mat(tcat.A_E - comp.A_E)),
                              mat_norm(Mat(tcat.A_C - comp.A_C)));
    rep.checks.push_back(Check::of("transport_concat_functorial", r, 1e-6));

    const ChainMap tinv = transport(inverse_path(in.p), rp, 1.0);
    const ChainMap prod = compose_chain_maps(tinv, tp, 1.0);
    const double ri =
        std::max(mat_norm(Mat(prod.A_E - Mat::Identity(prod.A_E.rows(), prod.A_E.cols()))),
                 mat_norm(Mat(prod.A_C - Mat::Identity(prod.A_C.rows(), prod.A_C.cols()))));
    rep.checks.push_back(Check::of("transport_inverse", ri, 1e-6));
  }

  const AHomotopy s1 =
      generate_homotopy(in.p, sinusoidal_variation(in.eta1, cfg.N, cfg.M), cfg.tol_path);
  const AHomotopy s2 = generate_homotopy(
      s1.tv_path(), sinusoidal_variation(in.eta2, cfg.N, cfg.M), cfg.tol_path);
  const AHomotopy hq =
      generate_homotopy(in.q, sinusoidal_variation(in.eta2, cfg.N, cfg.M), cfg.tol_path);

  const ChainHomotopy hol1 = homotopy_holonomy(s1, rp, /*tol_hol=*/1.0);
  rep.checks.push_back(
      Check::of("chain_homotopy_equations", hol1.homotopy_residual(), 1e-4));
  rep.checks.push_back(Check::of(
      "curvature_transport",
      curvature_transport_check(s1, *bundle.model, rp, cfg.s0 > 0 ? cfg.s0 : cfg.M / 2,
                                cfg.h_fd),
      1e-4));
  rep.checks.push_back(Check::of(
      "vertical_additivity", check_vertical_functoriality(s2, s1, rp), 5e-5));
  rep.checks.push_back(Check::of(
      "horizontal_identity", check_horizontal_functoriality(hq, s1, rp), 5e-5));
  rep.checks.push_back(Check::of(
      "vertical_inverse_negation",
      mat_norm(Mat(hol_of(vinv_homotopy(s1), rp) + hol1.phi)), 1e-8));

  const AHomotopy thin = thin_reparam_homotopy(in.p, smoothstep_reparam(), cfg.M);
  rep.checks.push_back(Check::of("thin_is_thin", thinness_defect(thin), cfg.tol_thin));
  rep.checks.push_back(Check::of("thin_vanishing", mat_norm(hol_of(thin, rp)), 1e-10));
  rep.checks.push_back(Check::of(
      "reparametrization_invariance",
      mat_norm(Mat(hol_of(homotopy_reparametrize(s1, smoothstep_reparam()), rp) -
                   hol1.phi)),
      1e-5));
}

/// Truncation data on the scenario paths; returns the composition residual
/// and the perturbation flip outcomes.
void append_truncation_checks(Report& rep, const ModelBundle& bundle,
                              const RunConfig& cfg) {
  const auto& rp = bundle.rep;
  const ScenarioInputs in = scenario_inputs(bundle, cfg.N, cfg.tol_path);
  const int dC = rp.complex->dim_C, dE = rp.complex->dim_E;

  Vec c0 = Vec::LinSpaced(dC, 0.3, 0.7);
  Vec e0 = Vec::LinSpaced(dE, -0.4, 0.6);
  TransOneMor m0{c0, in.p, e0};
  const AHomotopy w0 =
      generate_homotopy(in.p, sinusoidal_variation(in.eta1, cfg.N, cfg.M), cfg.tol_path);
  const TransOneMor m0p = two_vtgt(TransTwoMor{c0, w0, e0}, rp);

  // second leg starts where m0's path lands by construction
  const APath& q2 = in.q;
  Vec c1 = Vec::LinSpaced(dC, -0.2, 0.5);
  Vec e1 = one_tgt(m0, rp);
  TransOneMor m1{c1, q2, e1};
  const AHomotopy w1 =
      generate_homotopy(q2, sinusoidal_variation(in.eta2, cfg.N, cfg.M), cfg.tol_path);
  const TransOneMor m1p = two_vtgt(TransTwoMor{c1, w1, e1}, rp);

  const TruncationReport tr =
      truncation_composition_check(m0, m1, m0p, m1p, w0, w1, rp, 1e-4);
  rep.checks.push_back(Check::of("truncation_composition", tr.c_residual, 1e-4));

  const EquivalenceVerdict ok = equivalent(m0, m0p, w0, rp, 1e-6, cfg.tol_hol);
  rep.checks.push_back(
      Check::of("equivalence_witness", ok.equivalent ? 0.0 : 1.0, 0.0));
  TransOneMor m0_bad = m0p;
  if (dC > 0) m0_bad.c[0] += 10.0 * cfg.tol_hol;
  const EquivalenceVerdict bad_c = equivalent(m0, m0_bad, w0, rp, 1e-6, cfg.tol_hol);
  rep.checks.push_back(
      Check::of("equivalence_flips_on_c", bad_c.equivalent ? 1.0 : 0.0, 0.0));
  TransOneMor m0_bad_e = m0p;
  if (dE > 0) m0_bad_e.e[0] += 10.0 * cfg.tol_hol;
  const EquivalenceVerdict bad_e = equivalent(m0, m0_bad_e, w0, rp, 1e-6, cfg.tol_hol);
  rep.checks.push_back(
      Check::of("equivalence_flips_on_e", bad_e.equivalent ? 1.0 : 0.0, 0.0));

  // horizontal-inverse bookkeeping: the axiom-derived inverse against the
  // untwisted variant, surfaced as a result
  TransTwoMor w{c0, w0, e0};
  rep.add_result("hinv_variant_discrepancy", hinv_formula_discrepancy(w, rp));
  const TransTwoMor winv = two_hinv(w, rp);
  const TransTwoMor unit_cand = two_hcomp(winv, w, rp, 1e-3);
  rep.checks.push_back(
      Check::of("hinv_left_inverse_c", inf_norm(unit_cand.c), 1e-4));
}

}  // namespace

Report run_laws(const RunConfig& cfg) {
  Report rep;
  rep.subcommand = "laws";
  rep.config_echo = cfg.echo();
  const ModelBundle bundle = load_bundle(cfg);
  append_law_checks(rep, bundle, cfg);
  rep.finalize();
  return rep;
}

Report run_truncate_check(const RunConfig& cfg) {
  Report rep;
  rep.subcommand = "truncate-check";
  rep.config_echo = cfg.echo();
  const ModelBundle bundle = load_bundle(cfg);
  append_truncation_checks(rep, bundle, cfg);
  rep.finalize();
  return rep;
}

Report run_periods(const RunConfig& cfg) {
  Report rep;
  rep.subcommand = "periods";
  rep.config_echo = cfg.echo();
  const ModelBundle bundle = load_bundle(cfg);
  const auto& rp = bundle.rep;
  if (bundle.model->base_dim != 2)
    throw std::invalid_argument(
        "periods: built-in sphere generators need a 2d chart model");

  bool want_full = cfg.spheres.find("full") != std::string::npos;
  bool want_half = cfg.spheres.find("half") != std::string::npos;
  SphereCoverParams params;
  params.tol = std::max(cfg.tol_path, params.tol);
  PeriodReport pr;
  if (want_full) {
    const ASphere sphere = full_sphere_cover(bundle.model, cfg.N, cfg.M, params);
    pr = periods(rp, {sphere});
    const SpherePeriod& sp = pr.spheres[0];
    rep.add_result("full_period", format_matrix(sp.period));
    rep.add_result("full_period_norm", sp.norm);
    rep.add_result("full_error_estimate", sp.error_estimate);
    if (cfg.model_name == "prequantization_s2") {
      rep.checks.push_back(
          Check::of("full_sphere_area", std::abs(sp.norm - 4.0 * M_PI), 1e-3,
                    sp.error_estimate));
      rep.checks.push_back(Check::of(
          "hol_matches_plain_integral",
          mat_norm(Mat(sp.period - type0_period(sphere.homotopy, rp))), 1e-10));
    }
    if (cfg.model_name == "tangent_sphere_type1")
      rep.checks.push_back(
          Check::of("period_vanishes", sp.norm, sp.error_estimate));
    // vertical inverse negates the period
    const Mat inv_phi = hol_of(vinv_homotopy(sphere.homotopy), rp);
    rep.checks.push_back(Check::of("vinv_negates_period",
                                   mat_norm(Mat(inv_phi + sp.period)), 1e-10));
  }
  if (want_half && cfg.model_name == "prequantization_s2") {
    const AHomotopy half = sphere_cap_sweep(bundle.model, 0.5 * M_PI, cfg.N,
                                            cfg.M, params.tol);
    const Mat p = type0_period(half, rp);
    rep.add_result("hemisphere_period", format_matrix(p));
    rep.checks.push_back(
        Check::of("hemisphere_area", std::abs(p(0, 0) - 2.0 * M_PI), 1e-3));
  }
  rep.verdict = pr.verdict.empty() ? "no spheres evaluated" : pr.verdict;
  if (!rep.all_pass()) rep.verdict = "fail";
  return rep;
}

Report run_scenario(const RunConfig& cfg) {
  Report rep;
  rep.subcommand = "scenario";
  rep.config_echo = cfg.echo();
  const ModelBundle bundle = load_bundle(cfg);
  const auto& rp = bundle.rep;

  // axiom validation
  const auto samples = default_samples(*bundle.model, cfg.samples);
  const ValidationReport vr =
      validate_ruth(*bundle.model, rp, samples, cfg.h_fd, cfg.tol_model);
  for (const auto& ax : vr.axioms)
    rep.checks.push_back(Check{"action." + ax.name, ax.residual, ax.tolerance, ax.pass});

  append_law_checks(rep, bundle, cfg);

  if (cfg.model_name == "so3_string") {
    const Vec xi = parse_components("0,0,1", 3, "xi");
    const APath p = constant_path(bundle.model, chart_center(*bundle.model), xi, 100,
                                  cfg.tol_path);
    const ChainMap hol = transport(p, rp, cfg.tol_transport);
    Mat ad_star(3, 3);
    ad_star << 0, -xi[2], xi[1], xi[2], 0, -xi[0], -xi[1], xi[0], 0;
    rep.checks.push_back(Check::of(
        "transport_matches_exponential", mat_norm(Mat(hol.A_E - expm(Mat(-ad_star)))),
        1e-8));
    rep.checks.push_back(Check::of(
        "flat_trivial_holC_is_identity",
        mat_norm(Mat(hol.A_C - Mat::Identity(1, 1))), 1e-12));
  }
  if (cfg.model_name == "tangent_sphere_type1") {
    const ScenarioInputs in = scenario_inputs(bundle, cfg.N, cfg.tol_path);
    const AHomotopy s1 = generate_homotopy(
        in.p, sinusoidal_variation(in.eta1, cfg.N, cfg.M), cfg.tol_path);
    rep.checks.push_back(
        Check::of("type1_identity", type1_identity_check(s1, rp), 1e-5));
    SphereCoverParams params;
    params.tol = std::max(cfg.tol_path, params.tol);
    const int NS = std::max(cfg.N, 400), MS = std::max(cfg.M, 400);
    const ASphere sphere = full_sphere_cover(bundle.model, NS, MS, params);
    const SpherePeriod sp = sphere_period(sphere.homotopy, rp, sphere.defect_estimate);
    rep.add_result("sphere_period_norm", sp.norm);
    rep.add_result("sphere_error_estimate", sp.error_estimate);
    rep.checks.push_back(Check::of("sphere_period_vanishes", sp.norm, sp.error_estimate));
  }
  if (cfg.model_name == "prequantization_s2") {
    SphereCoverParams params;
    params.tol = std::max(cfg.tol_path, params.tol);
    const int NS = std::max(cfg.N, 400), MS = std::max(cfg.M, 400);
    const ASphere sphere = full_sphere_cover(bundle.model, NS, MS, params);
    const SpherePeriod sp = sphere_period(sphere.homotopy, rp, sphere.defect_estimate);
    rep.add_result("full_period_norm", sp.norm);
    rep.checks.push_back(Check::of("full_sphere_area", std::abs(sp.norm - 4.0 * M_PI),
                                   1e-3, sp.error_estimate));
    rep.checks.push_back(
        Check::of("obstruction_flagged", sp.obstruction ? 0.0 : 1.0, 0.0));
    const AHomotopy half =
        sphere_cap_sweep(bundle.model, 0.5 * M_PI, NS, MS, params.tol);
    rep.checks.push_back(Check::of(
        "hemisphere_area", std::abs(type0_period(half, rp)(0, 0) - 2.0 * M_PI), 1e-3));
    rep.checks.push_back(Check::of(
        "hol_matches_plain_integral",
        mat_norm(Mat(hol_of(sphere.homotopy, rp) - type0_period(sphere.homotopy, rp))),
        1e-10));
    // transgression linearity
    Vec e1 = Vec::Ones(1), e2 = Vec::Constant(1, -0.7);
    const KernelArrow k1 = transgression(sphere, e1, rp);
    const KernelArrow k2 = transgression(sphere, e2, rp);
    const KernelArrow k12 = transgression(sphere, Vec(2.0 * e1 + 3.0 * e2), rp);
    rep.checks.push_back(Check::of(
        "transgression_linearity",
        inf_norm(Vec(k12.c - 2.0 * k1.c - 3.0 * k2.c)), 1e-12));
  }

  append_truncation_checks(rep, bundle, cfg);
  rep.finalize();
  return rep;
}

Report run_convergence(const RunConfig& cfg) {
  Report rep;
  rep.subcommand = "convergence";
  rep.config_echo = cfg.echo();
  const ModelBundle bundle = load_bundle(cfg);
  std::vector<int> grids;
  {
    std::stringstream ss(cfg.grid_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) grids.push_back(std::stoi(tok));
  }
  if (grids.size() < 3)
    throw std::invalid_argument("convergence: need at least three grid sizes");
  for (int g : grids)
    if (g < 8 || g % 2 != 0)
      throw std::invalid_argument("convergence: grid sizes must be even and >= 8");

  std::vector<double> errs;
  if (cfg.op == "transport") {
    auto hol_at = [&](int n) {
      RunConfig c = cfg;
      c.N = n;
      return transport(build_path(bundle, cfg.path_spec, c), bundle.rep, 1.0);
    };
    const ChainMap ref = hol_at(2 * grids.back());
    for (int g : grids) {
      const ChainMap h = hol_at(g);
      errs.push_back(mat_norm(Mat(h.A_E - ref.A_E)) + mat_norm(Mat(h.A_C - ref.A_C)));
    }
  } else if (cfg.op == "holonomy") {
    auto phi_at = [&](int n) {
      RunConfig c = cfg;
      c.N = n;
      c.M = std::max(8, n / 2);
      return hol_of(build_homotopy(bundle, cfg.variation_spec, c), bundle.rep);
    };
    const Mat ref = phi_at(2 * grids.back());
    for (int g : grids) errs.push_back(mat_norm(Mat(phi_at(g) - ref)));
  } else {
    throw std::invalid_argument("convergence: op must be transport or holonomy");
  }
  const auto orders = convergence_orders(errs);
  for (size_t k = 0; k < errs.size(); ++k)
    rep.add_result("error_N" + std::to_string(grids[k]), errs[k]);
  double min_order = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < orders.size(); ++k) {
    rep.add_result("order_" + std::to_string(grids[k]) + "_to_" +
                       std::to_string(grids[k + 1]),
                   orders[k]);
    min_order = std::min(min_order, orders[k]);
  }
  rep.checks.push_back(Check::at_least("empirical_order", min_order,
                                       cfg.op == "transport" ? 3.8 : 1.8));
  rep.finalize();
  return rep;
}

}  // namespace holonomy2
