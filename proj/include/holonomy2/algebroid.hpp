#ifndef HOLONOMY2_ALGEBROID_HPP
#define HOLONOMY2_ALGEBROID_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "holonomy2/complexes.hpp"
#include "holonomy2/numerics.hpp"

namespace holonomy2 {

/// Default centered finite-difference step for model derivatives.
inline constexpr double kDefaultFdStep = 1e-4;
/// Default residual tolerance for model/axiom validation.
inline constexpr double kTolModel = 1e-6;

/// Axis-aligned chart bounds in R^m.
struct Box {
  Vec lo, hi;
  bool contains(const Vec& x) const;
  /// Largest box shrunk by `margin` on each side (for FD probes).
  Box shrunk(double margin) const;
};

/// Trivialized Lie algebroid on a single chart: anchor matrices rho(x)
/// (m x r) and structure functions c^k_{ij}(x) of the bracket, antisymmetric
/// in the lower indices. Point-base Lie algebras are encoded with m = 1 and
/// rho = 0.
struct AlgebroidModel {
  std::string name;
  int base_dim = 1;
  int rank = 0;
  std::function<Mat(const Vec&)> anchor;
  std::function<Tensor3(const Vec&)> structure;
  Box chart_bounds;

  // Optional analytic directional derivatives; finite differences otherwise.
  // anchor_dx(x, v) = (v . d/dx) anchor, and likewise for structure.
  std::function<Mat(const Vec&, const Vec&)> anchor_dx;
  std::function<Tensor3(const Vec&, const Vec&)> structure_dx;

  Mat anchor_at(const Vec& x) const;
  Tensor3 structure_at(const Vec& x) const;
};

using ModelPtr = std::shared_ptr<const AlgebroidModel>;

/// 2-term action data on a complex d: C -> E: connection coefficient
/// matrices gammaE(x, a), gammaC(x, a) (linear in a) and the antisymmetric
/// bilinear omega(x, a, b) with values in Hom(E, C).
struct RepUpToHomotopy {
  ComplexPtr complex;
  std::function<Mat(const Vec&, const Vec&)> gammaE;
  std::function<Mat(const Vec&, const Vec&)> gammaC;
  std::function<Mat(const Vec&, const Vec&, const Vec&)> omega;

  // Optional analytic directional derivatives (take precedence over FD):
  // gammaE_dx(x, v, a) = (v . d/dx) gammaE(., a) at x, etc.
  std::function<Mat(const Vec&, const Vec&, const Vec&)> gammaE_dx;
  std::function<Mat(const Vec&, const Vec&, const Vec&)> gammaC_dx;
  std::function<Mat(const Vec&, const Vec&)> boundary_dx;
  std::function<Mat(const Vec&, const Vec&, const Vec&, const Vec&)> omega_dx;

  Mat gammaE_at(const Vec& x, const Vec& a) const;
  Mat gammaC_at(const Vec& x, const Vec& a) const;
  Mat omega_at(const Vec& x, const Vec& a, const Vec& b) const;
};

/// A model together with its representation-up-to-homotopy data.
struct ModelBundle {
  ModelPtr model;
  RepUpToHomotopy rep;
};

/// Bracket of constant-coefficient elements: result_k = sum c^k_{ij} a_i b_j.
Vec bracket_at(const AlgebroidModel& model, const Vec& x, const Vec& a, const Vec& b);

/// Local curvature of a connection-coefficient field Gamma:
///   omega(a,b) = D_{rho a} Gamma(., b) - D_{rho b} Gamma(., a)
///              + [Gamma(a), Gamma(b)] - Gamma([a, b]),
/// with directional derivatives taken analytically when supplied, else by
/// centered differences with step h_fd.
Mat curvature_of_gamma(const AlgebroidModel& model,
                       const std::function<Mat(const Vec&, const Vec&)>& gamma,
                       const std::function<Mat(const Vec&, const Vec&, const Vec&)>& gamma_dx,
                       const Vec& x, const Vec& a, const Vec& b, double h_fd);

Mat curvature_E(const AlgebroidModel& model, const RepUpToHomotopy& rep,
                const Vec& x, const Vec& a, const Vec& b,
                double h_fd = kDefaultFdStep);
Mat curvature_C(const AlgebroidModel& model, const RepUpToHomotopy& rep,
                const Vec& x, const Vec& a, const Vec& b,
                double h_fd = kDefaultFdStep);

/// One validated axiom: max residual over the sample set.
struct AxiomResidual {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct ValidationReport {
  std::vector<AxiomResidual> axioms;
  int sample_count = 0;
  double fd_step = kDefaultFdStep;
  bool all_pass() const;
  double max_residual() const;
};

/// Checks the algebroid structure itself: antisymmetry of the structure
/// functions, anchor/bracket compatibility and the Jacobi identity, by
/// finite differences at `samples` points.
ValidationReport validate_model(const AlgebroidModel& model,
                                const std::vector<Vec>& samples,
                                double h_fd = kDefaultFdStep,
                                double tol = kTolModel);

/// Checks the four compatibility equations of a 2-term action:
///  (i)  d gammaC - gammaE d = (rho a . d/dx) d
///  (ii) d omega = curvature of gammaE
///  (iii) omega d = curvature of gammaC
///  (iv) covariant differential of omega vanishes,
/// plus exact antisymmetry of omega and linearity of the gammas,
/// at the supplied base points with deterministic probe vectors.
ValidationReport validate_ruth(const AlgebroidModel& model, const RepUpToHomotopy& rep,
                               const std::vector<Vec>& samples,
                               double h_fd = kDefaultFdStep,
                               double tol = kTolModel);

/// Deterministic validation sample points inside the chart.
std::vector<Vec> default_samples(const AlgebroidModel& model, int count);

/// Built-in model registry. Known names: so3_string, tangent_sphere_type1,
/// prequantization_s2, constant_coeff, abelian.
ModelBundle builtin_model(const std::string& name,
                          const std::map<std::string, double>& params = {});
std::vector<std::string> builtin_model_names();

}  // namespace holonomy2

#endif
