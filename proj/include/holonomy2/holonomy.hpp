#ifndef HOLONOMY2_HOLONOMY_HPP
#define HOLONOMY2_HOLONOMY_HPP

#include "holonomy2/complexes.hpp"
#include "holonomy2/paths.hpp"

namespace holonomy2 {

/// Default chain-condition tolerance for ODE-produced transports.
inline constexpr double kTolTransport = 1e-8;
/// Default tolerance for the chain-homotopy equations of hol(sigma).
inline constexpr double kTolHol = 1e-5;

/// Parallel transport along a discrete path for one connection-coefficient
/// field: solves dU/dt = -Gamma(gamma(t), a(t)) U, U(0) = I, by RK4 with
/// cubic half-node resampling; returns U at every grid node.
std::vector<Mat> transport_sequence(const APath& p,
                                    const std::function<Mat(const Vec&, const Vec&)>& gamma,
                                    int dim);

/// hol(a) = (hol^C_a, hol^E_a) as an invertible chain map x -> y.
ChainMap transport(const APath& p, const RepUpToHomotopy& rep,
                   double tol_transport = kTolTransport);

/// Per-node transports of every s-row of a homotopy:
///   forwardE[s][t] = hol^E_{t,0},  forwardC[s][t] = hol^C_{t,0},
///   reverseE[s][t] = hol^E_{1,t},  reverseC[s][t] = hol^C_{1,t},
/// with the reverse family integrated backward rather than inverted.
struct TransportTable {
  int N = 0, M = 0;
  std::vector<std::vector<Mat>> forwardE, forwardC, reverseE, reverseC;
  std::vector<Mat> endE, endC;  // full-path transports per s-row
  double mult_residual = 0.0;   // restart spot-check at t = 1/2, s = 0
};

TransportTable build_transport_table(const AHomotopy& h, const RepUpToHomotopy& rep);

/// hol(sigma): composite-Simpson double integral of
/// hol^C_{1,t} omega(a, b) hol^E_{t,0} over the grid; validated as a chain
/// homotopy transport(s_V) => transport(t_V) within tol_hol.
ChainHomotopy homotopy_holonomy(const AHomotopy& h, const RepUpToHomotopy& rep,
                                double tol_hol = kTolHol,
                                double tol_transport = kTolTransport);

/// Same as homotopy_holonomy but reusing a prebuilt table.
ChainHomotopy homotopy_holonomy(const AHomotopy& h, const RepUpToHomotopy& rep,
                                const TransportTable& table, double tol_hol,
                                double tol_transport);

/// Compares d/ds hol^E_{1,0} (centered difference at interior s-row s0)
/// with the t-integral of hol^E_{1,t} omegaE(a,b) hol^E_{t,0}; returns the
/// max-norm residual.
double curvature_transport_check(const AHomotopy& h, const AlgebroidModel& model,
                                 const RepUpToHomotopy& rep, int s0,
                                 double h_fd = kDefaultFdStep);

/// || hol(vconcat(h2, h1)) - (hol(h2) + hol(h1)) ||.
double check_vertical_functoriality(const AHomotopy& h2, const AHomotopy& h1,
                                    const RepUpToHomotopy& rep,
                                    double tol_hol = kTolHol);
/// || hol(hconcat(h2, h1)) - (hol^C(s_V h2) hol(h1) + hol(h2) hol^E(t_V h1)) ||.
double check_horizontal_functoriality(const AHomotopy& h2, const AHomotopy& h1,
                                      const RepUpToHomotopy& rep,
                                      double tol_hol = kTolHol);

}  // namespace holonomy2

#endif
