#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "holonomy2/cli.hpp"
#include "holonomy2/serialization.hpp"
#include "holonomy2/config.hpp"
#include "holonomy2/report.hpp"
#include "holonomy2/scenarios.hpp"

using namespace holonomy2;

namespace {
int run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli_run(args, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}
}  // namespace

TEST_CASE("exit codes") {
  SUBCASE("passing scenario returns 0") {
    CHECK(run({"validate-model", "--name", "abelian"}) == 0);
  }
  SUBCASE("unknown model is a config error") {
    CHECK(run({"validate-model", "--name", "nope"}) == 2);
  }
  SUBCASE("grid violations are config errors") {
    CHECK(run({"laws", "--name", "abelian", "--N", "7"}) == 2);
    CHECK(run({"laws", "--name", "abelian", "--N", "10", "--M", "9"}) == 2);
  }
  SUBCASE("nonpositive tolerances are config errors") {
    CHECK(run({"laws", "--name", "abelian", "--tol-hol", "0"}) == 2);
  }
  SUBCASE("unknown subcommand is a usage error") {
    CHECK(run({"frobnicate"}) == 2);
  }
  SUBCASE("bad path specs are config errors") {
    CHECK(run({"transport", "--name", "so3_string", "--path", "wat:1"}) == 2);
    CHECK(run({"transport", "--name", "so3_string", "--path", "constant:1,2"}) == 2);
  }
}

TEST_CASE("config files and overrides") {
  const std::string path = "test_cli_config.ini";
  {
    std::ofstream f(path);
    f << "# comment\n[model]\nname = abelian\nparam.rank = 3\n"
      << "[grids]\nN = 16\nM = 12\n[tolerances]\ntol_hol = 2e-5\n";
  }
  RunConfig cfg = load_config_file(path);
  CHECK(cfg.model_name == "abelian");
  CHECK(cfg.model_params.at("rank") == 3.0);
  CHECK(cfg.N == 16);
  CHECK(cfg.M == 12);
  CHECK(cfg.tol_hol == 2e-5);
  CHECK_THROWS_AS(apply_config_entry(cfg, "grids", "bogus", "1"),
                  std::invalid_argument);
  CHECK(run({"validate-model", "--config", path}) == 0);
  std::remove(path.c_str());
}

TEST_CASE("machine reports are deterministic") {
  RunConfig cfg;
  cfg.model_name = "so3_string";
  cfg.N = 64;
  cfg.M = 32;
  cfg.tol_path = 1e-2;  // coarse grids carry larger (honest) grid residuals
  Report r1 = run_laws(cfg);
  Report r2 = run_laws(cfg);
  CHECK(machine_report(r1) == machine_report(r2));
  CHECK(machine_report(r1).find("\"schema_version\": 1") != std::string::npos);
}

TEST_CASE("reports are bitwise-independent of the thread count") {
  RunConfig cfg;
  cfg.model_name = "tangent_sphere_type1";
  cfg.N = 64;
  cfg.M = 32;
  cfg.tol_path = 1e-2;
  setenv("HOLONOMY2_THREADS", "1", 1);
  const std::string serial = machine_report(run_laws(cfg));
  setenv("HOLONOMY2_THREADS", "4", 1);
  const std::string parallel = machine_report(run_laws(cfg));
  unsetenv("HOLONOMY2_THREADS");
  CHECK(serial == parallel);
}

TEST_CASE("report files are written") {
  const std::string path = "test_cli_report.json";
  std::string text;
  CHECK(run({"validate-model", "--name", "abelian", "--report", path}, &text) == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(ss.str().find("wall") == std::string::npos);  // no clock in machine reports
  std::remove(path.c_str());
}

TEST_CASE("periods subcommand emits the obstruction verdict with exit 0") {
  std::string text;
  const int code = run({"periods", "--name", "prequantization_s2", "--N", "200",
                        "--M", "200"},
                       &text);
  CHECK(code == 0);
  CHECK(text.find("obstruction found") != std::string::npos);
}

TEST_CASE("convergence subcommand reports orders") {
  std::string text;
  const int code = run({"convergence", "--name", "so3_string", "--op", "transport",
                        "--path", "constant:0,0,1", "--grids", "8,16,32"},
                       &text);
  CHECK(code == 0);
  CHECK(text.find("empirical_order") != std::string::npos);
}

TEST_CASE("scenario subcommand passes end to end") {
  CHECK(run({"scenario", "--name", "constant_coeff"}) == 0);
}

TEST_CASE("file input feeds the transport pipeline") {
  auto b = builtin_model("so3_string");
  auto p = constant_path(b.model, Vec::Zero(1), (Vec(3) << 0, 0, 1).finished(), 32);
  write_path_file(p, "test_cli_path.txt");
  std::string text;
  const int code =
      run({"transport", "--name", "so3_string", "--input", "test_cli_path.txt",
           "--N", "32"},
          &text);
  CHECK(code == 0);
  std::remove("test_cli_path.txt");
}

TEST_CASE("per-check failure flips the exit code") {
  // an impossibly tight model tolerance forces a failed check, not an error
  std::string text;
  const int code = run({"validate-model", "--name", "tangent_sphere_type1",
                        "--tol-model", "1e-30"},
                       &text);
  CHECK(code == 1);
  CHECK(text.find("[FAIL]") != std::string::npos);
}
