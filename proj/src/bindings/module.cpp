#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "holonomy2/cli.hpp"
#include "holonomy2/scenarios.hpp"
#include "holonomy2/serialization.hpp"

namespace py = pybind11;
using namespace holonomy2;

namespace {

std::vector<std::vector<Vec>> grid_from_numpy(const Eigen::MatrixXd& flat, int N,
                                              int M, int width) {
  if (flat.rows() != static_cast<Eigen::Index>((N + 1) * (M + 1)) ||
      flat.cols() != width)
    throw std::invalid_argument("grid array has the wrong shape");
  std::vector<std::vector<Vec>> out(M + 1, std::vector<Vec>(N + 1));
  for (int j = 0; j <= M; ++j)
    for (int i = 0; i <= N; ++i)
      out[j][i] = flat.row(j * (N + 1) + i).transpose();
  return out;
}

Eigen::MatrixXd grid_to_numpy(const std::vector<std::vector<Vec>>& grid) {
  const int M = static_cast<int>(grid.size()) - 1;
  const int N = static_cast<int>(grid.front().size()) - 1;
  const int width = static_cast<int>(grid[0][0].size());
  Eigen::MatrixXd flat((N + 1) * (M + 1), width);
  for (int j = 0; j <= M; ++j)
    for (int i = 0; i <= N; ++i) flat.row(j * (N + 1) + i) = grid[j][i].transpose();
  return flat;
}

Eigen::MatrixXd rows_to_numpy(const std::vector<Vec>& row) {
  return grid_to_numpy({row});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "holonomy of 2-term Lie algebroid actions: paths, transports, "
            "homotopy holonomy, transformation 2-groupoid, periods";

  py::class_<ModelBundle>(m, "ModelBundle")
      .def_property_readonly("name",
                             [](const ModelBundle& b) { return b.model->name; })
      .def_property_readonly("base_dim",
                             [](const ModelBundle& b) { return b.model->base_dim; })
      .def_property_readonly("rank",
                             [](const ModelBundle& b) { return b.model->rank; })
      .def_property_readonly("dim_C",
                             [](const ModelBundle& b) { return b.rep.complex->dim_C; })
      .def_property_readonly("dim_E",
                             [](const ModelBundle& b) { return b.rep.complex->dim_E; })
      .def("anchor_at",
           [](const ModelBundle& b, const Vec& x) { return b.model->anchor_at(x); })
      .def("bracket_at",
           [](const ModelBundle& b, const Vec& x, const Vec& a, const Vec& bb) {
             return bracket_at(*b.model, x, a, bb);
           })
      .def("boundary_at",
           [](const ModelBundle& b, const Vec& x) {
             return b.rep.complex->boundary_at(x);
           })
      .def("gammaE_at",
           [](const ModelBundle& b, const Vec& x, const Vec& a) {
             return b.rep.gammaE_at(x, a);
           })
      .def("gammaC_at",
           [](const ModelBundle& b, const Vec& x, const Vec& a) {
             return b.rep.gammaC_at(x, a);
           })
      .def("omega_at", [](const ModelBundle& b, const Vec& x, const Vec& a,
                          const Vec& bb) { return b.rep.omega_at(x, a, bb); });

  m.def("builtin_model", &builtin_model, py::arg("name"),
        py::arg("params") = std::map<std::string, double>{});
  m.def("builtin_model_names", &builtin_model_names);

  py::class_<AxiomResidual>(m, "AxiomResidual")
      .def_readonly("name", &AxiomResidual::name)
      .def_readonly("residual", &AxiomResidual::residual)
      .def_readonly("tolerance", &AxiomResidual::tolerance)
      .def_readonly("passed", &AxiomResidual::pass);
  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("axioms", &ValidationReport::axioms)
      .def("all_pass", &ValidationReport::all_pass)
      .def("max_residual", &ValidationReport::max_residual);
  m.def(
      "validate_model",
      [](const ModelBundle& b, int samples, double h_fd, double tol) {
        return validate_model(*b.model, default_samples(*b.model, samples), h_fd, tol);
      },
      py::arg("bundle"), py::arg("samples") = 25, py::arg("h_fd") = kDefaultFdStep,
      py::arg("tol") = kTolModel);
  m.def(
      "validate_ruth",
      [](const ModelBundle& b, int samples, double h_fd, double tol) {
        return validate_ruth(*b.model, b.rep, default_samples(*b.model, samples),
                             h_fd, tol);
      },
      py::arg("bundle"), py::arg("samples") = 25, py::arg("h_fd") = kDefaultFdStep,
      py::arg("tol") = kTolModel);

  py::class_<APath>(m, "APath")
      .def_readonly("N", &APath::N)
      .def_readonly("residual", &APath::residual)
      .def_property_readonly("gamma",
                             [](const APath& p) { return rows_to_numpy(p.gamma); })
      .def_property_readonly("a", [](const APath& p) { return rows_to_numpy(p.a); })
      .def("source", &APath::source)
      .def("target", &APath::target);

  m.def(
      "unit_path",
      [](const ModelBundle& b, const Vec& x, int N) {
        return unit_path(b.model, x, N);
      },
      py::arg("bundle"), py::arg("x"), py::arg("N") = kDefaultN);
  m.def(
      "constant_path",
      [](const ModelBundle& b, const Vec& x0, const Vec& xi, int N, double tol) {
        return constant_path(b.model, x0, xi, N, tol);
      },
      py::arg("bundle"), py::arg("x0"), py::arg("xi"), py::arg("N") = kDefaultN,
      py::arg("tol") = kTolPath);
  m.def(
      "path_from_a",
      [](const ModelBundle& b, const Vec& x0, const std::function<Vec(double)>& a,
         int N, double tol) { return path_from_a(b.model, x0, a, N, tol); },
      py::arg("bundle"), py::arg("x0"), py::arg("a"), py::arg("N") = kDefaultN,
      py::arg("tol") = kTolPath);
  m.def("inverse_path", &inverse_path);
  m.def("concat_paths",
        [](const APath& b, const APath& a) { return concat_paths(b, a); });
  m.def("reparametrize",
        [](const APath& p) { return reparametrize(p, smoothstep_reparam()); });
  m.def("path_distance", &path_distance);

  py::class_<AHomotopy>(m, "AHomotopy")
      .def_readonly("N", &AHomotopy::N)
      .def_readonly("M", &AHomotopy::M)
      .def_readonly("residual", &AHomotopy::residual)
      .def("sv_path", &AHomotopy::sv_path)
      .def("tv_path", &AHomotopy::tv_path)
      .def_property_readonly(
          "gamma", [](const AHomotopy& h) { return grid_to_numpy(h.gamma); })
      .def_property_readonly("a",
                             [](const AHomotopy& h) { return grid_to_numpy(h.a); })
      .def_property_readonly("b",
                             [](const AHomotopy& h) { return grid_to_numpy(h.b); });

  m.def(
      "generate_homotopy",
      [](const APath& a0, const Eigen::MatrixXd& b, int M, double tol) {
        return generate_homotopy(a0, grid_from_numpy(b, a0.N, M, a0.model->rank),
                                 tol);
      },
      py::arg("a0"), py::arg("b"), py::arg("M"), py::arg("tol") = kTolPath);
  m.def(
      "generate_sinusoidal_homotopy",
      [](const APath& a0, const Vec& eta, int M, double tol) {
        return generate_homotopy(a0, sinusoidal_variation(eta, a0.N, M), tol);
      },
      py::arg("a0"), py::arg("eta"), py::arg("M") = kDefaultM,
      py::arg("tol") = kTolPath);
  m.def(
      "thin_reparam_homotopy",
      [](const APath& p, int M) {
        return thin_reparam_homotopy(p, smoothstep_reparam(), M);
      },
      py::arg("p"), py::arg("M") = kDefaultM);
  m.def("vertical_unit", &vertical_unit, py::arg("p"), py::arg("M") = kDefaultM);
  m.def("is_thin", &is_thin, py::arg("h"), py::arg("tol_thin") = kTolThin);
  m.def("thinness_defect", &thinness_defect);
  m.def("vconcat",
        [](const AHomotopy& h2, const AHomotopy& h1) { return vconcat(h2, h1); });
  m.def("hconcat",
        [](const AHomotopy& h2, const AHomotopy& h1) { return hconcat(h2, h1); });
  m.def("vinv_homotopy", &vinv_homotopy);
  m.def("hinv_homotopy", &hinv_homotopy);
  m.def("homotopy_reparametrize", [](const AHomotopy& h) {
    return homotopy_reparametrize(h, smoothstep_reparam());
  });

  py::class_<ChainMap>(m, "ChainMap")
      .def_readonly("A_C", &ChainMap::A_C)
      .def_readonly("A_E", &ChainMap::A_E)
      .def_readonly("x", &ChainMap::x)
      .def_readonly("y", &ChainMap::y)
      .def("chain_residual", &ChainMap::chain_residual);
  py::class_<ChainHomotopy>(m, "ChainHomotopy")
      .def_readonly("source", &ChainHomotopy::source)
      .def_readonly("target", &ChainHomotopy::target)
      .def_readonly("phi", &ChainHomotopy::phi)
      .def("homotopy_residual", &ChainHomotopy::homotopy_residual);

  m.def(
      "transport",
      [](const APath& p, const ModelBundle& b, double tol) {
        return transport(p, b.rep, tol);
      },
      py::arg("p"), py::arg("bundle"), py::arg("tol_transport") = kTolTransport);
  m.def(
      "homotopy_holonomy",
      [](const AHomotopy& h, const ModelBundle& b, double tol_hol) {
        return homotopy_holonomy(h, b.rep, tol_hol);
      },
      py::arg("h"), py::arg("bundle"), py::arg("tol_hol") = kTolHol);
  m.def(
      "curvature_transport_check",
      [](const AHomotopy& h, const ModelBundle& b, int s0) {
        return curvature_transport_check(h, *b.model, b.rep, s0);
      },
      py::arg("h"), py::arg("bundle"), py::arg("s0"));

  py::class_<ASphere>(m, "ASphere")
      .def_readonly("homotopy", &ASphere::homotopy)
      .def_readonly("defect_estimate", &ASphere::defect_estimate)
      .def("base", &ASphere::base);
  m.def(
      "full_sphere_cover",
      [](const ModelBundle& b, int N, int M) {
        return full_sphere_cover(b.model, N, M);
      },
      py::arg("bundle"), py::arg("N") = 400, py::arg("M") = 400);
  m.def(
      "sphere_cap_sweep",
      [](const ModelBundle& b, double theta_max, int N, int M) {
        return sphere_cap_sweep(b.model, theta_max, N, M);
      },
      py::arg("bundle"), py::arg("theta_max"), py::arg("N") = 400,
      py::arg("M") = 400);

  py::class_<SpherePeriod>(m, "SpherePeriod")
      .def_readonly("period", &SpherePeriod::period)
      .def_readonly("norm", &SpherePeriod::norm)
      .def_readonly("error_estimate", &SpherePeriod::error_estimate)
      .def_readonly("obstruction", &SpherePeriod::obstruction);
  m.def(
      "sphere_period",
      [](const AHomotopy& h, const ModelBundle& b, double defect) {
        return sphere_period(h, b.rep, defect);
      },
      py::arg("h"), py::arg("bundle"), py::arg("defect_estimate") = 0.0);
  m.def("type0_period", [](const AHomotopy& h, const ModelBundle& b) {
    return type0_period(h, b.rep);
  });
  m.def("type1_identity_check", [](const AHomotopy& h, const ModelBundle& b) {
    return type1_identity_check(h, b.rep);
  });
  m.def("transgression",
        [](const ASphere& s, const Vec& e, const ModelBundle& b) {
          const KernelArrow k = transgression(s, e, b.rep);
          return py::make_tuple(k.c, k.e);
        });

  m.def("write_path_file", &write_path_file);
  m.def("write_homotopy_file", &write_homotopy_file);
  m.def(
      "read_path_file",
      [](const ModelBundle& b, const std::string& path, double tol) {
        return read_path_file(b.model, path, tol);
      },
      py::arg("bundle"), py::arg("path"), py::arg("tol") = kTolPath);
  m.def(
      "read_homotopy_file",
      [](const ModelBundle& b, const std::string& path, double tol) {
        return read_homotopy_file(b.model, path, tol);
      },
      py::arg("bundle"), py::arg("path"), py::arg("tol") = kTolPath);

  m.def("cli_run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
