#ifndef HOLONOMY2_PATHS_HPP
#define HOLONOMY2_PATHS_HPP

#include <functional>
#include <vector>

#include "holonomy2/algebroid.hpp"

namespace holonomy2 {

inline constexpr int kDefaultN = 200;
inline constexpr int kDefaultM = 100;
/// Default tolerance for the discrete A-path / A-homotopy residuals.
/// Residuals are measured relative to the local magnitude of the data, so
/// the tolerance is chart-scale invariant.
inline constexpr double kTolPath = 1e-3;
/// Default wedge-norm threshold for thinness.
inline constexpr double kTolThin = 1e-8;

/// Reparametrization map [0,1] -> [0,1] with its derivative.
struct Reparam {
  std::function<double(double)> tau;
  std::function<double(double)> dtau;
};

/// Polynomial smoothstep t^3(10 - 15t + 6t^2); derivative vanishes to first
/// order at the ends.
Reparam smoothstep_reparam();
/// 7th-order smootherstep; derivatives up to third order vanish at the ends.
/// Concatenations flatten with this one so that the seams stay C^3 and the
/// composite residual keeps the interior truncation order.
Reparam smootherstep_reparam();
/// True flat cutoff exp(-1/t)/(exp(-1/t) + exp(-1/(1-t))); all derivatives
/// vanish at the ends.
Reparam flat_cutoff_reparam();

/// Discrete A-path: uniformly sampled base curve gamma(t_i) with algebroid
/// components a(t_i) subject to the midpoint-rule condition
/// (gamma_{i+1} - gamma_i)/h = rho(gamma_{i+1/2}) a_{i+1/2}.
struct APath {
  ModelPtr model;
  int N = 0;
  std::vector<Vec> gamma;  // N+1 base points
  std::vector<Vec> a;      // N+1 fiber components
  double residual = 0.0;
  double tol = kTolPath;

  static APath from_data(ModelPtr model, std::vector<Vec> gamma, std::vector<Vec> a,
                         double tol = kTolPath);

  const Vec& source() const { return gamma.front(); }
  const Vec& target() const { return gamma.back(); }
};

/// Max node distance between the (gamma, a) grids of two paths on a shared
/// grid; infinity when grids are incompatible.
double path_distance(const APath& p, const APath& q);

APath unit_path(ModelPtr model, const Vec& x, int N = kDefaultN);
/// a^{-1}(t) = -a(1 - t) over the reversed base curve.
APath inverse_path(const APath& p);

/// Builds an A-path by integrating dgamma/dt = rho(gamma) a(t) with RK4.
APath path_from_a(ModelPtr model, const Vec& x0,
                  const std::function<Vec(double)>& a, int N = kDefaultN,
                  double tol = kTolPath);
APath constant_path(ModelPtr model, const Vec& x0, const Vec& xi, int N = kDefaultN,
                    double tol = kTolPath);

/// tau'(t) a(tau(t)) on the grid (cubic resampling).
APath reparametrize(const APath& p, const Reparam& re);

/// Speed-doubled concatenation b . a on a 2N grid; both inputs are
/// boundary-flattened first. The second leg is translated by the endpoint
/// mismatch (zero for exactly matching inputs).
APath concat_paths(const APath& b, const APath& a, double tol_endpoint = 1e-6,
                   const Reparam& re = smootherstep_reparam());

/// Discrete A-homotopy sigma = a dt + b ds on an (N+1) x (M+1) grid,
/// indexed [s][t]. Invariants: every s-row is an A-path, d_s gamma = rho b
/// and d_s a - d_t b = [a, b] to the stated tolerance (centered differences,
/// one-sided at edges), and b vanishes identically at t = 0, 1.
struct AHomotopy {
  ModelPtr model;
  int N = 0, M = 0;
  std::vector<std::vector<Vec>> gamma, a, b;
  double residual = 0.0;
  double tol = kTolPath;

  static AHomotopy from_data(ModelPtr model, std::vector<std::vector<Vec>> gamma,
                             std::vector<std::vector<Vec>> a,
                             std::vector<std::vector<Vec>> b, double tol = kTolPath);

  APath sv_path() const;  // row s = 0
  APath tv_path() const;  // row s = 1
  const Vec& source_point() const { return gamma.front().front(); }
  const Vec& target_point() const { return gamma.front().back(); }
};

/// Vertical unit 1^V_p: constant-in-s homotopy with b = 0.
AHomotopy vertical_unit(const APath& p, int M = kDefaultM);
/// Horizontal unit at x: the zero homotopy.
AHomotopy horizontal_unit(ModelPtr model, const Vec& x, int N = kDefaultN,
                          int M = kDefaultM);

/// Solves d_s a = d_t b + [a, b], d_s gamma = rho(gamma) b upward in s from
/// the initial path (method of lines, RK4 in s, centered differences in t).
/// The variation grid b must vanish at t = 0, 1.
AHomotopy generate_homotopy(const APath& a0, const std::vector<std::vector<Vec>>& b,
                            double tol = kTolPath);

/// Convenience: b(t, s) = sin(pi t) eta on an (N+1) x (M+1) grid.
std::vector<std::vector<Vec>> sinusoidal_variation(const Vec& eta, int N, int M);

/// Linear-in-s reparametrization family tau_s = (1-s) id + s tau; thin by
/// construction.
AHomotopy thin_reparam_homotopy(const APath& p, const Reparam& re, int M = kDefaultM);

/// sigma o d(tau x tau): tau'(t) a(tau t, tau s) dt + tau'(s) b(tau t, tau s) ds.
AHomotopy homotopy_reparametrize(const AHomotopy& h, const Reparam& re);

/// max wedge norm of (a, b) over the grid <= tol.
bool is_thin(const AHomotopy& h, double tol_thin = kTolThin);
double thinness_defect(const AHomotopy& h);

/// Vertical concatenation (s-stacking, b speed-doubled); faces must match.
/// `re` is the boundary-flattening cutoff (pass flat_cutoff_reparam() for a
/// true bump-style cutoff).
AHomotopy vconcat(const AHomotopy& h2, const AHomotopy& h1, double tol_face = 1e-6,
                  bool auto_flatten = true,
                  const Reparam& re = smootherstep_reparam());
/// Horizontal concatenation (t-stacking, a speed-doubled).
AHomotopy hconcat(const AHomotopy& h2, const AHomotopy& h1, double tol_face = 1e-6,
                  bool auto_flatten = true,
                  const Reparam& re = smootherstep_reparam());
/// Vertical inverse a(t, 1-s) dt - b(t, 1-s) ds.
AHomotopy vinv_homotopy(const AHomotopy& h);
/// Horizontal inverse -a(1-t, s) dt + b(1-t, s) ds.
AHomotopy hinv_homotopy(const AHomotopy& h);

/// Flattens a homotopy in the s-direction only (pullback under id x tau).
AHomotopy flatten_s(const AHomotopy& h, const Reparam& re);
/// Flattens a homotopy in the t-direction only (pullback under tau x id).
AHomotopy flatten_t(const AHomotopy& h, const Reparam& re);

}  // namespace holonomy2

#endif
