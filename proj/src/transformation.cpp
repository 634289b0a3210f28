#include "holonomy2/transformation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace holonomy2 {

namespace {

double inf_norm(const Vec& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

Mat hol_phi(const AHomotopy& h, const RepUpToHomotopy& rep) {
  return homotopy_holonomy(h, rep, /*tol_hol=*/1.0).phi;
}

}  // namespace

Vec one_src(const TransOneMor& m) { return m.e; }

Vec one_tgt(const TransOneMor& m, const RepUpToHomotopy& rep) {
  const ChainMap hol = transport(m.path, rep);
  return hol.A_E * m.e + rep.complex->boundary_at(m.path.target()) * m.c;
}

TransOneMor one_unit(ModelPtr model, const ComplexPtr& cx, const Vec& x, int N) {
  TransOneMor m;
  m.path = unit_path(std::move(model), x, N);
  m.c = Vec::Zero(cx->dim_C);
  m.e = Vec::Zero(cx->dim_E);
  return m;
}

TransOneMor one_mult(const TransOneMor& m1, const TransOneMor& m0,
                     const RepUpToHomotopy& rep, double tol) {
  if (inf_norm(one_src(m1) - one_tgt(m0, rep)) > tol)
    throw std::invalid_argument("one_mult: morphisms not composable");
  const ChainMap hol1 = transport(m1.path, rep);
  TransOneMor out;
  out.c = m1.c + hol1.A_C * m0.c;
  out.path = concat_paths(m1.path, m0.path);
  out.e = m0.e;
  return out;
}

TransOneMor one_inv(const TransOneMor& m, const RepUpToHomotopy& rep) {
  const APath ainv = inverse_path(m.path);
  const ChainMap hol = transport(m.path, rep);
  const ChainMap hol_inv = transport(ainv, rep);
  TransOneMor out;
  out.c = -(hol_inv.A_C * m.c);
  out.path = ainv;
  out.e = hol.A_E * m.e + rep.complex->boundary_at(m.path.target()) * m.c;
  return out;
}

TransOneMor two_vsrc(const TransTwoMor& w) {
  return TransOneMor{w.c, w.homotopy.sv_path(), w.e};
}

TransOneMor two_vtgt(const TransTwoMor& w, const RepUpToHomotopy& rep) {
  const Mat phi = hol_phi(w.homotopy, rep);
  return TransOneMor{w.c - phi * w.e, w.homotopy.tv_path(), w.e};
}

Vec two_hsrc(const TransTwoMor& w) { return w.e; }

Vec two_htgt(const TransTwoMor& w, const RepUpToHomotopy& rep) {
  return one_tgt(two_vsrc(w), rep);
}

TransTwoMor two_vcomp(const TransTwoMor& w2, const TransTwoMor& w1,
                      const RepUpToHomotopy& rep, double tol) {
  const TransOneMor tgt1 = two_vtgt(w1, rep);
  if (path_distance(w1.homotopy.tv_path(), w2.homotopy.sv_path()) > tol)
    throw std::invalid_argument("two_vcomp: vertical faces do not match");
  if (inf_norm(w2.c - tgt1.c) > tol || inf_norm(w2.e - tgt1.e) > tol)
    throw std::invalid_argument("two_vcomp: fiber components not composable");
  TransTwoMor out;
  out.c = w1.c;
  out.homotopy = vconcat(w2.homotopy, w1.homotopy, std::max(tol, 1e-6));
  out.e = w1.e;
  return out;
}

TransTwoMor two_hcomp(const TransTwoMor& w, const TransTwoMor& u,
                      const RepUpToHomotopy& rep, double tol) {
  if (inf_norm(two_hsrc(w) - two_htgt(u, rep)) > tol)
    throw std::invalid_argument("two_hcomp: horizontal faces do not match");
  const ChainMap hol0 = transport(w.homotopy.sv_path(), rep);
  TransTwoMor out;
  out.c = w.c + hol0.A_C * u.c;
  out.homotopy = hconcat(w.homotopy, u.homotopy, std::max(tol, 1e-6));
  out.e = u.e;
  return out;
}

TransTwoMor two_vinv(const TransTwoMor& w, const RepUpToHomotopy& rep) {
  const Mat phi = hol_phi(w.homotopy, rep);
  TransTwoMor out;
  out.c = w.c - phi * w.e;
  out.homotopy = vinv_homotopy(w.homotopy);
  out.e = w.e;
  return out;
}

TransTwoMor two_hinv(const TransTwoMor& w, const RepUpToHomotopy& rep) {
  const APath a0 = w.homotopy.sv_path();
  const ChainMap hol_a0inv = transport(inverse_path(a0), rep);
  const ChainMap hol_a0 = transport(a0, rep);
  TransTwoMor out;
  out.c = -(hol_a0inv.A_C * w.c);
  out.homotopy = hinv_homotopy(w.homotopy);
  out.e = hol_a0.A_E * w.e + rep.complex->boundary_at(a0.target()) * w.c;
  return out;
}

TransTwoMor two_hinv_untwisted(const TransTwoMor& w, const RepUpToHomotopy& rep) {
  const ChainMap hol_a0 = transport(w.homotopy.sv_path(), rep);
  TransTwoMor out;
  out.c = hol_a0.A_C * w.c;
  out.homotopy = hinv_homotopy(w.homotopy);
  out.e = w.e;
  return out;
}

double hinv_formula_discrepancy(const TransTwoMor& w, const RepUpToHomotopy& rep) {
  const TransTwoMor ax = two_hinv(w, rep);
  const TransTwoMor pr = two_hinv_untwisted(w, rep);
  return std::max(inf_norm(ax.c - pr.c), inf_norm(ax.e - pr.e));
}

EquivalenceVerdict equivalent(const TransOneMor& m0, const TransOneMor& m1,
                              const AHomotopy& witness, const RepUpToHomotopy& rep,
                              double tol, double tol_hol) {
  EquivalenceVerdict v;
  v.face_residual = std::max(path_distance(witness.sv_path(), m0.path),
                             path_distance(witness.tv_path(), m1.path));
  v.e_residual = inf_norm(m0.e - m1.e);
  const Mat phi = hol_phi(witness, rep);
  const Vec delta = m1.c - m0.c;
  const double r_minus = inf_norm(delta + phi * m0.e);  // vertical-target convention
  const double r_plus = inf_norm(delta - phi * m0.e);
  if (r_minus <= r_plus) {
    v.c_residual = r_minus;
    v.matched_sign = -1;
  } else {
    v.c_residual = r_plus;
    v.matched_sign = +1;
  }
  v.equivalent = v.face_residual <= tol && v.e_residual <= tol && v.c_residual <= tol_hol;
  return v;
}

TruncationReport truncation_composition_check(
    const TransOneMor& m0, const TransOneMor& m1, const TransOneMor& m0p,
    const TransOneMor& m1p, const AHomotopy& w0, const AHomotopy& w1,
    const RepUpToHomotopy& rep, double tol_hol) {
  TransTwoMor W0{m0.c, w0, m0.e};
  TransTwoMor W1{m1.c, w1, m1.e};
  const TransTwoMor W = two_hcomp(W1, W0, rep, /*tol=*/1e-4);
  const TransOneMor prod = one_mult(m1, m0, rep, 1e-4);
  const TransOneMor prodp = one_mult(m1p, m0p, rep, 1e-4);
  const EquivalenceVerdict v = equivalent(prod, prodp, W.homotopy, rep,
                                          /*tol=*/1.0, /*tol_hol=*/tol_hol);
  TruncationReport rep_out;
  rep_out.c_residual = v.c_residual;
  rep_out.e_residual = v.e_residual;
  // paths of the composed witness are concatenations; compare endpoints only
  rep_out.face_residual =
      std::max(inf_norm(W.homotopy.sv_path().target() - prod.path.target()),
               inf_norm(W.homotopy.tv_path().target() - prodp.path.target()));
  rep_out.pass = v.c_residual <= tol_hol && v.e_residual <= tol_hol;
  return rep_out;
}

}  // namespace holonomy2
