#include "holonomy2/holonomy.hpp"

#include <cmath>
#include <stdexcept>

namespace holonomy2 {

namespace {

struct CoeffLine {
  // node and half-node samples of (gamma, a) along one s-row
  const std::vector<Vec>* g;
  const std::vector<Vec>* a;
  std::vector<Vec> ghalf, ahalf;

  CoeffLine(const std::vector<Vec>& gamma, const std::vector<Vec>& av)
      : g(&gamma), a(&av) {
    const int n = static_cast<int>(gamma.size()) - 1;
    ghalf.resize(n);
    ahalf.resize(n);
    for (int i = 0; i < n; ++i) {
      ghalf[i] = midpoint4(gamma, i);
      ahalf[i] = midpoint4(av, i);
    }
  }
};

/// Forward transports U_i = hol_{t_i, 0}; dU/dt = -Gamma U.
std::vector<Mat> forward_line(const CoeffLine& line,
                              const std::function<Mat(const Vec&, const Vec&)>& gamma,
                              int dim) {
  const int n = static_cast<int>(line.g->size()) - 1;
  const double h = 1.0 / n;
  std::vector<Mat> U(n + 1);
  U[0] = Mat::Identity(dim, dim);
  for (int i = 0; i < n; ++i) {
    const Mat A0 = -gamma((*line.g)[i], (*line.a)[i]);
    const Mat Ah = -gamma(line.ghalf[i], line.ahalf[i]);
    const Mat A1 = -gamma((*line.g)[i + 1], (*line.a)[i + 1]);
    const Mat k1 = A0 * U[i];
    const Mat k2 = Ah * (U[i] + 0.5 * h * k1);
    const Mat k3 = Ah * (U[i] + 0.5 * h * k2);
    const Mat k4 = A1 * (U[i] + h * k3);
    U[i + 1] = U[i] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return U;
}

/// Reverse transports W_i = hol_{1, t_i}; dW/dt = +W Gamma, integrated
/// backward from W_n = I.
std::vector<Mat> reverse_line(const CoeffLine& line,
                              const std::function<Mat(const Vec&, const Vec&)>& gamma,
                              int dim) {
  const int n = static_cast<int>(line.g->size()) - 1;
  const double h = 1.0 / n;
  std::vector<Mat> W(n + 1);
  W[n] = Mat::Identity(dim, dim);
  for (int i = n; i > 0; --i) {
    const Mat A1 = gamma((*line.g)[i], (*line.a)[i]);
    const Mat Ah = gamma(line.ghalf[i - 1], line.ahalf[i - 1]);
    const Mat A0 = gamma((*line.g)[i - 1], (*line.a)[i - 1]);
    const Mat k1 = W[i] * A1;
    const Mat k2 = (W[i] - 0.5 * h * k1) * Ah;
    const Mat k3 = (W[i] - 0.5 * h * k2) * Ah;
    const Mat k4 = (W[i] - h * k3) * A0;
    W[i - 1] = W[i] - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return W;
}

double mat_norm(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

std::vector<Mat> transport_sequence(const APath& p,
                                    const std::function<Mat(const Vec&, const Vec&)>& gamma,
                                    int dim) {
  CoeffLine line(p.gamma, p.a);
  return forward_line(line, gamma, dim);
}

ChainMap transport(const APath& p, const RepUpToHomotopy& rep, double tol_transport) {
  CoeffLine line(p.gamma, p.a);
  const auto UE = forward_line(line, rep.gammaE, rep.complex->dim_E);
  const auto UC = forward_line(line, rep.gammaC, rep.complex->dim_C);
  return ChainMap::checked(rep.complex, p.source(), p.target(), UC.back(), UE.back(),
                           tol_transport);
}

TransportTable build_transport_table(const AHomotopy& h, const RepUpToHomotopy& rep) {
  TransportTable t;
  t.N = h.N;
  t.M = h.M;
  t.forwardE.resize(h.M + 1);
  t.forwardC.resize(h.M + 1);
  t.reverseE.resize(h.M + 1);
  t.reverseC.resize(h.M + 1);
  t.endE.resize(h.M + 1);
  t.endC.resize(h.M + 1);
  const int dE = rep.complex->dim_E, dC = rep.complex->dim_C;
  parallel_for(h.M + 1, [&](int j) {
    CoeffLine line(h.gamma[j], h.a[j]);
    t.forwardE[j] = forward_line(line, rep.gammaE, dE);
    t.forwardC[j] = forward_line(line, rep.gammaC, dC);
    t.reverseE[j] = reverse_line(line, rep.gammaE, dE);
    t.reverseC[j] = reverse_line(line, rep.gammaC, dC);
    t.endE[j] = t.forwardE[j].back();
    t.endC[j] = t.forwardC[j].back();
  });

  // multiplicativity spot check at t = 1/2 on the bottom row:
  // hol_{1,1/2} hol_{1/2,0} = hol_{1,0}
  if (h.N % 2 == 0 && dE > 0) {
    const int mid = h.N / 2;
    std::vector<Vec> g2(h.gamma[0].begin() + mid, h.gamma[0].end());
    std::vector<Vec> a2(h.a[0].begin() + mid, h.a[0].end());
    // restarted transport over [1/2, 1] (unit-speed reparametrization scales a by 1/2
    // jointly with the halved interval; equivalently integrate the tail directly)
    CoeffLine tail(g2, a2);
    const int n2 = h.N - mid;
    const double hstep = 1.0 / h.N;
    Mat U = Mat::Identity(dE, dE);
    for (int i = 0; i < n2; ++i) {
      const Mat A0 = -rep.gammaE(g2[i], a2[i]);
      const Mat Ah = -rep.gammaE(tail.ghalf[i], tail.ahalf[i]);
      const Mat A1 = -rep.gammaE(g2[i + 1], a2[i + 1]);
      const Mat k1 = A0 * U;
      const Mat k2 = Ah * (U + 0.5 * hstep * k1);
      const Mat k3 = Ah * (U + 0.5 * hstep * k2);
      const Mat k4 = A1 * (U + hstep * k3);
      U += (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const Mat lhs = U * t.forwardE[0][mid];
    t.mult_residual = mat_norm(Mat(lhs - t.endE[0])) / (1.0 + mat_norm(t.endE[0]));
  }
  return t;
}

ChainHomotopy homotopy_holonomy(const AHomotopy& h, const RepUpToHomotopy& rep,
                                const TransportTable& table, double tol_hol,
                                double tol_transport) {
  if (h.N % 2 != 0 || h.M % 2 != 0)
    throw std::invalid_argument("homotopy_holonomy: grid sizes must be even");
  const auto wN = simpson_weights(h.N);
  const auto wM = simpson_weights(h.M);
  Mat phi = Mat::Zero(rep.complex->dim_C, rep.complex->dim_E);
  for (int j = 0; j <= h.M; ++j) {
    Mat row = Mat::Zero(rep.complex->dim_C, rep.complex->dim_E);
    for (int i = 0; i <= h.N; ++i) {
      const Mat w = rep.omega_at(h.gamma[j][i], h.a[j][i], h.b[j][i]);
      row += wN[i] * (table.reverseC[j][i] * w * table.forwardE[j][i]);
    }
    phi += wM[j] * row;
  }
  ChainMap src = ChainMap::checked(rep.complex, h.source_point(), h.target_point(),
                                   table.forwardC[0].back(), table.forwardE[0].back(),
                                   tol_transport);
  ChainMap tgt = ChainMap::checked(rep.complex, h.source_point(), h.target_point(),
                                   table.forwardC[h.M].back(),
                                   table.forwardE[h.M].back(), tol_transport);
  try {
    return ChainHomotopy::checked(std::move(src), std::move(tgt), std::move(phi),
                                  tol_hol);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("homotopy_holonomy: ") + e.what() +
                             " (discretization too coarse or inconsistent model)");
  }
}

ChainHomotopy homotopy_holonomy(const AHomotopy& h, const RepUpToHomotopy& rep,
                                double tol_hol, double tol_transport) {
  const TransportTable table = build_transport_table(h, rep);
  return homotopy_holonomy(h, rep, table, tol_hol, tol_transport);
}

double curvature_transport_check(const AHomotopy& h, const AlgebroidModel& model,
                                 const RepUpToHomotopy& rep, int s0, double h_fd) {
  if (s0 <= 0 || s0 >= h.M)
    throw std::invalid_argument("curvature_transport_check: s0 must be interior");
  if (h.N % 2 != 0)
    throw std::invalid_argument("curvature_transport_check: N must be even");
  const TransportTable table = build_transport_table(h, rep);
  const Mat dds = 0.5 * h.M * (table.endE[s0 + 1] - table.endE[s0 - 1]);
  const auto wN = simpson_weights(h.N);
  Mat rhs = Mat::Zero(rep.complex->dim_E, rep.complex->dim_E);
  for (int i = 0; i <= h.N; ++i) {
    const Mat wE =
        curvature_E(model, rep, h.gamma[s0][i], h.a[s0][i], h.b[s0][i], h_fd);
    rhs += wN[i] * (table.reverseE[s0][i] * wE * table.forwardE[s0][i]);
  }
  return mat_norm(Mat(dds - rhs));
}

double check_vertical_functoriality(const AHomotopy& h2, const AHomotopy& h1,
                                    const RepUpToHomotopy& rep, double tol_hol) {
  const AHomotopy cat = vconcat(h2, h1);
  const Mat lhs = homotopy_holonomy(cat, rep, std::max(tol_hol, 1.0)).phi;
  const Mat rhs = homotopy_holonomy(h2, rep, std::max(tol_hol, 1.0)).phi +
                  homotopy_holonomy(h1, rep, std::max(tol_hol, 1.0)).phi;
  return mat_norm(Mat(lhs - rhs));
}

double check_horizontal_functoriality(const AHomotopy& h2, const AHomotopy& h1,
                                      const RepUpToHomotopy& rep, double tol_hol) {
  const AHomotopy cat = hconcat(h2, h1);
  const Mat lhs = homotopy_holonomy(cat, rep, std::max(tol_hol, 1.0)).phi;
  const ChainHomotopy hol1 = homotopy_holonomy(h1, rep, std::max(tol_hol, 1.0));
  const ChainHomotopy hol2 = homotopy_holonomy(h2, rep, std::max(tol_hol, 1.0));
  const ChainMap holA0p = transport(h2.sv_path(), rep);  // hol(s_V h2)
  const ChainMap holA1 = transport(h1.tv_path(), rep);   // hol(t_V h1)
  const Mat rhs = holA0p.A_C * hol1.phi + hol2.phi * holA1.A_E;
  return mat_norm(Mat(lhs - rhs));
}

}  // namespace holonomy2
