#ifndef HOLONOMY2_NUMERICS_HPP
#define HOLONOMY2_NUMERICS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <type_traits>
#include <vector>

namespace holonomy2 {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Structure functions c^k_{ij}: entry k holds the r x r matrix over (i,j).
using Tensor3 = std::vector<Mat>;

/// Composite Simpson weights on a uniform grid with n intervals (n+1 nodes).
/// n must be even and >= 2. Weights include the h = 1/n factor, so
/// sum_i w_i * f_i approximates the integral over [0,1].
std::vector<double> simpson_weights(int n);

/// Integral over [0,1] of vector samples (n+1 nodes, uniform grid).
/// Uses composite Simpson when the interval count is even; otherwise
/// Simpson on the leading part plus a 3/8 closing rule. A single sample
/// is treated as a constant integrand.
Vec integrate_samples(const std::vector<Vec>& samples);

/// Cubic (4-point) interpolation at the midpoint between nodes i and i+1
/// of a uniformly sampled sequence. Falls back to shifted stencils at the
/// ends; for n < 3 degrades gracefully to lower order.
template <typename T>
T midpoint4(const std::vector<T>& f, int i) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return f[0];
  if (n == 1) return 0.5 * (f[0] + f[1]);
  if (n == 2) {
    // quadratic through the three nodes
    if (i == 0) return 0.375 * f[0] + 0.75 * f[1] - 0.125 * f[2];
    return -0.125 * f[0] + 0.75 * f[1] + 0.375 * f[2];
  }
  if (i == 0) return (5.0 * f[0] + 15.0 * f[1] - 5.0 * f[2] + f[3]) / 16.0;
  if (i == n - 1)
    return (f[n - 3] - 5.0 * f[n - 2] + 15.0 * f[n - 1] + 5.0 * f[n]) / 16.0;
  return (-f[i - 1] + 9.0 * f[i] + 9.0 * f[i + 1] - f[i + 2]) / 16.0;
}

/// Cubic Lagrange evaluation of a uniformly sampled sequence at fractional
/// index u in [0, n]. Used for reparametrizations.
template <typename T>
T cubic_at(const std::vector<T>& f, double u) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return f[0];
  if (u <= 0.0) return f[0];
  if (u >= n) return f[n];
  if (n < 3) {
    const int i = std::min(static_cast<int>(u), n - 1);
    const double x = u - i;
    return (1.0 - x) * f[i] + x * f[i + 1];
  }
  int i = static_cast<int>(u);
  if (i > n - 1) i = n - 1;
  int base = i - 1;
  if (base < 0) base = 0;
  if (base > n - 3) base = n - 3;
  const double x = u - base;
  const double l0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
  const double l1 = x * (x - 2.0) * (x - 3.0) / 2.0;
  const double l2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
  const double l3 = x * (x - 1.0) * (x - 2.0) / 6.0;
  return l0 * f[base] + l1 * f[base + 1] + l2 * f[base + 2] + l3 * f[base + 3];
}

/// First derivative on a uniform grid over [0,1] with n intervals: centered
/// differences at interior nodes, 2nd-order one-sided stencils at the ends.
/// `f(k)` returns the sample at node k.
template <typename GetT>
auto grid_diff(const GetT& f, int idx, int n) {
  using T = std::decay_t<decltype(f(0))>;
  T out;
  if (idx == 0)
    out = 0.5 * n * (-3.0 * f(0) + 4.0 * f(1) - f(2));
  else if (idx == n)
    out = 0.5 * n * (3.0 * f(n) - 4.0 * f(n - 1) + f(n - 2));
  else
    out = 0.5 * n * (f(idx + 1) - f(idx - 1));
  return out;
}

/// Fourth-order first derivative on a uniform grid over [0,1] with n >= 4
/// intervals: five-point centered stencils inside, one-sided at the ends.
template <typename GetT>
auto grid_diff4(const GetT& f, int idx, int n) {
  using T = std::decay_t<decltype(f(0))>;
  T out;
  const double s = n / 12.0;
  if (idx == 0)
    out = s * (-25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4));
  else if (idx == 1)
    out = s * (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4));
  else if (idx == n - 1)
    out = s * (-f(n - 4) + 6.0 * f(n - 3) - 18.0 * f(n - 2) + 10.0 * f(n - 1) +
               3.0 * f(n));
  else if (idx == n)
    out = s * (3.0 * f(n - 4) - 16.0 * f(n - 3) + 36.0 * f(n - 2) -
               48.0 * f(n - 1) + 25.0 * f(n));
  else
    out = s * (f(idx - 2) - 8.0 * f(idx - 1) + 8.0 * f(idx + 1) - f(idx + 2));
  return out;
}

/// Dense matrix exponential by scaling and squaring of a Taylor series.
/// Adequate for the small operator norms met here; used as the closed-form
/// route against ODE transport.
Mat expm(const Mat& A);

/// Norm of the wedge a ^ b: sqrt(|a|^2 |b|^2 - <a,b>^2), clamped at 0.
double wedge_norm(const Vec& a, const Vec& b);

/// Smoothstep t^3 (10 - 15 t + 6 t^2) on [0,1]; first derivative vanishes
/// at both ends.
double smoothstep(double t);
/// Derivative of smoothstep: 30 t^2 (1-t)^2.
double smoothstep_prime(double t);
/// 7th-order smootherstep; derivatives up to third order vanish at the ends.
double smootherstep(double t);
/// Derivative of smootherstep: 140 t^3 (1-t)^3.
double smootherstep_prime(double t);

/// Runs fn(i) for i in [0, n) on up to HOLONOMY2_THREADS workers
/// (0 or unset = hardware concurrency). Iterations must be independent;
/// results do not depend on the schedule.
void parallel_for(int n, const std::function<void(int)>& fn);

/// Empirical convergence order from consecutive error pairs:
/// log2(err[k] / err[k+1]) for grids doubling in resolution.
std::vector<double> convergence_orders(const std::vector<double>& errs);

}  // namespace holonomy2

#endif
