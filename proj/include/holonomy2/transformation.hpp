#ifndef HOLONOMY2_TRANSFORMATION_HPP
#define HOLONOMY2_TRANSFORMATION_HPP

#include "holonomy2/holonomy.hpp"

namespace holonomy2 {

/// 1-morphism (c, a, e) of the transformation 2-groupoid: c in the C-fiber
/// over target(path), e in the E-fiber over source(path).
struct TransOneMor {
  Vec c;
  APath path;
  Vec e;
};

/// 2-morphism (c, sigma, e): c over the horizontal target, e over the
/// horizontal source of the homotopy.
struct TransTwoMor {
  Vec c;
  AHomotopy homotopy;
  Vec e;
};

Vec one_src(const TransOneMor& m);
/// hol^E_a(e) + boundary(y) c.
Vec one_tgt(const TransOneMor& m, const RepUpToHomotopy& rep);

TransOneMor one_unit(ModelPtr model, const ComplexPtr& cx, const Vec& x,
                     int N = kDefaultN);

/// (c1 + hol^C_{a1}(c0), a1 . a0, e0); requires one_src(m1) = one_tgt(m0).
TransOneMor one_mult(const TransOneMor& m1, const TransOneMor& m0,
                     const RepUpToHomotopy& rep, double tol = 1e-6);

/// (-hol^C_{a^{-1}}(c), a^{-1}, hol^E_a(e) + boundary c).
TransOneMor one_inv(const TransOneMor& m, const RepUpToHomotopy& rep);

TransOneMor two_vsrc(const TransTwoMor& w);
/// (c - hol(sigma) e, t_V(sigma), e).
TransOneMor two_vtgt(const TransTwoMor& w, const RepUpToHomotopy& rep);

Vec two_hsrc(const TransTwoMor& w);
/// Horizontal target shared by both vertical faces:
/// hol^E_{s_V(sigma)}(e) + boundary c.
Vec two_htgt(const TransTwoMor& w, const RepUpToHomotopy& rep);

/// (c1, sigma2 .V sigma1, e1); requires two_vtgt(w1) = two_vsrc(w2).
TransTwoMor two_vcomp(const TransTwoMor& w2, const TransTwoMor& w1,
                      const RepUpToHomotopy& rep, double tol = 1e-4);
/// (c + hol^C_{s_V(sigma)}(b), sigma .H tau, f); requires matching
/// horizontal faces.
TransTwoMor two_hcomp(const TransTwoMor& w, const TransTwoMor& u,
                      const RepUpToHomotopy& rep, double tol = 1e-4);
/// (c - hol(sigma) e, sigma^{-1V}, e).
TransTwoMor two_vinv(const TransTwoMor& w, const RepUpToHomotopy& rep);
/// Inverse forced by the groupoid axioms:
/// (-hol^C_{(s_V sigma)^{-1}}(c), sigma^{-1H}, hol^E_{s_V sigma}(e) + boundary c).
TransTwoMor two_hinv(const TransTwoMor& w, const RepUpToHomotopy& rep);
/// Horizontal-inverse variant that transports c along the forward source
/// path and keeps e. Its bookkeeping is inconsistent with the face maps;
/// kept only so the discrepancy can be measured.
TransTwoMor two_hinv_untwisted(const TransTwoMor& w, const RepUpToHomotopy& rep);
/// Componentwise discrepancy between the two horizontal inverses.
double hinv_formula_discrepancy(const TransTwoMor& w, const RepUpToHomotopy& rep);

struct EquivalenceVerdict {
  bool equivalent = false;
  double c_residual = 0.0;   // best-sign residual of c1 - c0 = -/+ hol(sigma) e0
  double e_residual = 0.0;
  double face_residual = 0.0;
  int matched_sign = -1;     // -1: vertical-target convention, +1: the opposite
};

/// Decides m0 ~ m1 via the witness homotopy connecting their paths.
EquivalenceVerdict equivalent(const TransOneMor& m0, const TransOneMor& m1,
                              const AHomotopy& witness, const RepUpToHomotopy& rep,
                              double tol = 1e-6, double tol_hol = kTolHol);

struct TruncationReport {
  double c_residual = 0.0;
  double e_residual = 0.0;
  double face_residual = 0.0;
  bool pass = false;
};

/// Given witnesses w0: m0 ~ m0', w1: m1 ~ m1', verifies
/// one_mult(m1, m0) ~ one_mult(m1', m0') with the horizontally composed
/// witness.
TruncationReport truncation_composition_check(
    const TransOneMor& m0, const TransOneMor& m1, const TransOneMor& m0p,
    const TransOneMor& m1p, const AHomotopy& w0, const AHomotopy& w1,
    const RepUpToHomotopy& rep, double tol_hol = kTolHol);

}  // namespace holonomy2

#endif
