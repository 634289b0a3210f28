#ifndef HOLONOMY2_COMPLEXES_HPP
#define HOLONOMY2_COMPLEXES_HPP

#include <functional>
#include <memory>
#include <vector>

#include "holonomy2/numerics.hpp"

namespace holonomy2 {

/// Default determinant floor below which a chain-map component counts as
/// singular.
inline constexpr double kEpsInv = 1e-12;
/// Default chain-condition tolerance for floating (ODE-produced) data.
/// Exact-input constructors pass 0.
inline constexpr double kTolChain = 1e-9;

/// Two-term complex of vector bundles over an opaque coordinate base:
/// the fiberwise boundary map boundary(x): C_x -> E_x as a dim_E x dim_C
/// matrix. The boundary function must be deterministic.
struct TwoTermComplex {
  int dim_C = 0;
  int dim_E = 0;
  std::function<Mat(const Vec&)> boundary;

  Mat boundary_at(const Vec& x) const;
};

using ComplexPtr = std::shared_ptr<const TwoTermComplex>;

/// Builds a complex with a constant boundary matrix.
ComplexPtr make_constant_complex(const Mat& boundary);

/// Invertible chain map (A_C, A_E): (C_x, E_x) -> (C_y, E_y) with
/// A_E boundary(x) = boundary(y) A_C.
struct ChainMap {
  ComplexPtr complex;
  Vec x, y;
  Mat A_C, A_E;

  /// Validating factory. tol_chain = 0 demands the chain condition exactly.
  static ChainMap checked(ComplexPtr cx, Vec x, Vec y, Mat A_C, Mat A_E,
                          double tol_chain = kTolChain, double eps_inv = kEpsInv);
  static ChainMap identity(ComplexPtr cx, const Vec& x);

  double chain_residual() const;
  bool is_identity(double tol = 1e-12) const;
};

/// Chain homotopy phi: source => target between chain maps sharing endpoints;
/// phi in Hom(E_x, C_y) with
///   A_C(target) - A_C(source) = phi boundary(x),
///   A_E(target) - A_E(source) = boundary(y) phi.
struct ChainHomotopy {
  ChainMap source;
  ChainMap target;
  Mat phi;

  static ChainHomotopy checked(ChainMap source, ChainMap target, Mat phi,
                               double tol_chain = kTolChain);
  /// Vertical unit at a chain map (phi = 0).
  static ChainHomotopy vertical_unit(const ChainMap& at);

  /// Max-norm of the two defining-equation residuals.
  double homotopy_residual() const;
};

// Gauge 2-groupoid operations.

/// (B, A) -> (B_C A_C, B_E A_E); requires A.y == B.x.
ChainMap compose_chain_maps(const ChainMap& g, const ChainMap& f,
                            double tol = kTolChain);
/// Componentwise inverse; throws on near-singular components.
ChainMap invert_chain_map(const ChainMap& f, double eps_inv = kEpsInv);

/// Vertical composition psi . phi = psi + phi (phi: A0=>A1, psi: A1=>A2).
ChainHomotopy vcomp(const ChainHomotopy& psi, const ChainHomotopy& phi,
                    double tol = kTolChain);
/// Horizontal composition over x -> y -> z:
/// (phi2 * phi1).phi = phi2 A0_E + A'1_C phi1.
ChainHomotopy hcomp(const ChainHomotopy& phi2, const ChainHomotopy& phi1,
                    double tol = kTolChain);
/// Vertical inverse: negate phi, swap source/target.
ChainHomotopy vinv(const ChainHomotopy& phi);
/// Horizontal inverse -A1_C^{-1} phi A0_E^{-1} between the inverted maps.
ChainHomotopy hinv(const ChainHomotopy& phi, double eps_inv = kEpsInv);

/// Arrow (c, e) of the kernel 2-vector bundle groupoid p*C over E:
/// source e, target e + boundary(base) c, in the fiber over `base`.
struct KernelArrow {
  ComplexPtr complex;
  Vec base;
  Vec c;
  Vec e;

  Vec source() const { return e; }
  Vec target() const;
};

/// (c2, e1 + d c1) . (c1, e1) = (c1 + c2, e1); exact groupoid laws.
KernelArrow kernel_mult(const KernelArrow& g2, const KernelArrow& g1,
                        double tol = 1e-12);
/// (c, e)^{-1} = (-c, e + d c).
KernelArrow kernel_inv(const KernelArrow& g);

/// Quotient map of K-paths: a uniformly sampled fiber path (c(s), e(s))
/// maps to (integral of c, e(0)) by Simpson quadrature.
KernelArrow integrate_kernel_path(const std::vector<KernelArrow>& samples,
                                  double tol = 1e-12);

}  // namespace holonomy2

#endif
