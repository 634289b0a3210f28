#ifndef HOLONOMY2_INTEGRABILITY_HPP
#define HOLONOMY2_INTEGRABILITY_HPP

#include <string>

#include "holonomy2/transformation.hpp"

namespace holonomy2 {

/// A-sphere: a homotopy whose vertical source and target are unit paths at
/// the same base point (a vanishes identically on the s = 0, 1 rows).
/// defect_estimate bounds the area unresolved by a built-in smoothing.
struct ASphere {
  AHomotopy homotopy;
  double defect_estimate = 0.0;

  const Vec& base() const { return homotopy.source_point(); }
  static ASphere from_homotopy(AHomotopy h, double defect_estimate = 0.0);
};

struct SphereCoverParams {
  double cap_angle = 8e-3;      // polar angle of the smoothed cap
  double closure_scale = 10.0;  // lasso growth factor before the closing row
  double tol = 1e-2;            // sweep data carries O((omega h)^2) residuals
};

/// Degree-1 cover of S^2 in the stereographic chart for the built-in sphere
/// models: a lasso sweep through growing circles around the chart origin,
/// closed across the (unresolvable) polar cap between the last two grid
/// rows. The defect estimate carries the smoothed-over area.
ASphere full_sphere_cover(ModelPtr model, int N, int M,
                          const SphereCoverParams& params = {});

/// Open lasso sweep up to polar angle theta_max (pi/2 = hemisphere);
/// t_V is the final lasso loop, not a unit path.
AHomotopy sphere_cap_sweep(ModelPtr model, double theta_max, int N, int M,
                           double tol = 1e-2);

/// delta_2[sigma]_e = (hol(sigma) e, e) in the kernel groupoid fiber over
/// the sphere's base point.
KernelArrow transgression(const ASphere& sigma, const Vec& e,
                          const RepUpToHomotopy& rep);

struct SpherePeriod {
  Mat period;
  double norm = 0.0;            // spectral norm of hol(sigma)
  double error_estimate = 0.0;  // one-step Richardson + smoothing defect
  bool obstruction = false;
};

struct PeriodReport {
  std::vector<SpherePeriod> spheres;
  double verdict_threshold = 10.0;  // obstruction when norm > threshold * error
  bool obstruction_found = false;
  std::string verdict;
};

/// Evaluates hol on each sphere; flags an obstruction when a period norm
/// exceeds 10x its error estimate. Evidence only: verdicts speak about the
/// supplied generators.
PeriodReport periods(const RepUpToHomotopy& rep, const std::vector<ASphere>& spheres);

/// hol(sigma) of a single homotopy without the chain-homotopy gate, plus a
/// one-refinement Richardson error estimate (0 when the grid cannot be
/// coarsened).
SpherePeriod sphere_period(const AHomotopy& h, const RepUpToHomotopy& rep,
                           double defect_estimate = 0.0);

/// Core-anchor-invertible case: compares the double-integral hol(sigma)
/// against hol^E_{t_V} - hol^E_{s_V} under the identification by the
/// boundary map; returns the max-norm residual.
double type1_identity_check(const AHomotopy& h, const RepUpToHomotopy& rep,
                            double eps_inv = kEpsInv);

/// Trivial-representation case (boundary = 0, flat trivial connections):
/// plain Simpson double integral of omega over the homotopy.
Mat type0_period(const AHomotopy& h, const RepUpToHomotopy& rep);

/// Prop-style relation c1 - c0 = (type0 period)(e) with either sign
/// accepted; consistent with the transformation-groupoid equivalence.
EquivalenceVerdict type0_equivalence_check(const Vec& c0, const APath& a0,
                                           const Vec& c1, const APath& a1,
                                           const Vec& e, const AHomotopy& witness,
                                           const RepUpToHomotopy& rep,
                                           double tol = 1e-6,
                                           double tol_hol = kTolHol);

}  // namespace holonomy2

#endif
