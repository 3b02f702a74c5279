#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cbs/cli/commands.hpp"
#include "cbs/cli/output.hpp"
#include "cbs/errors.hpp"

using namespace cbs;
using namespace cbs::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "cbs_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cbs");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double v : {0.1, -2.5e-300, 1.0 / 3.0, 6.02214076e23}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(NAN) == "nan");
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("spectrum command writes CSV and sidecar") {
  SpectrumConfig cfg;
  cfg.out = scratch("spectrum.csv").string();
  cfg.points = 20001;
  const auto side = cmd_spectrum(cfg);
  const auto l = lines(cfg.out);
  REQUIRE(l.size() == 2 + 2 * 20001);
  CHECK(l[0].rfind("# cbs spectrum config_hash=", 0) == 0);
  CHECK(l[0].find("units:") != std::string::npos);
  CHECK(l[1] == "delta_in_Gamma,omega_minus_omegaL_in_Gamma,P_in_per_eta");
  REQUIRE(side["runs"].size() == 2);
  CHECK(side["runs"][0]["peaks"][0]["fwhm"].get<double>() == doctest::Approx(0.64).epsilon(0.01 / 0.64));
  CHECK(side["runs"][1]["peaks"].size() == 2);
  CHECK(fs::exists(sidecar_path(cfg.out)));
}

TEST_CASE("spectrum config errors name the field") {
  SpectrumConfig cfg;
  cfg.out = scratch("bad.csv").string();
  cfg.deltas.clear();
  try {
    cmd_spectrum(cfg);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "delta");
  }
  cfg.deltas = {0.0};
  cfg.s = 0.5;
  try {
    cmd_spectrum(cfg);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "s");
  }
}

TEST_CASE("unwritable output is an I/O error") {
  SpectrumConfig cfg;
  cfg.out = "/nonexistent-dir/x/spectrum.csv";
  CHECK_THROWS_AS(cmd_spectrum(cfg), IoError);
  CHECK(invoke({"spectrum", "--out", cfg.out}) == kConfigError);
}

TEST_CASE("enhancement command") {
  EnhancementConfig cfg;
  cfg.out = scratch("enhancement.csv").string();
  const auto side = cmd_enhancement(cfg);
  CHECK(side["slope_at_s0_zero"].get<double>() == doctest::Approx(-0.25).epsilon(4e-4));
  const auto l = lines(cfg.out);
  CHECK(l[1] == "s0,alpha_exact,alpha_large_detuning,alpha_linear");
  CHECK(l[2] == "0,2,2,2");
  bool found = false;
  for (const auto& row : l)
    if (row.rfind("4,", 0) == 0) {
      found = true;
      CHECK(row.find(",1.5,1") != std::string::npos);
    }
  CHECK(found);
  cfg.delta = 0.0;
  CHECK_THROWS_AS(cmd_enhancement(cfg), ConfigError);
}

TEST_CASE("cone command") {
  ConeConfig cfg;
  cfg.out = scratch("cone.csv").string();
  const auto side = cmd_cone(cfg);
  const auto l = lines(cfg.out);
  CHECK(l[1] == "theta,I_fixed,I_avg_omega,I_avg_omega_and_positions");
  std::stringstream first(l[2]);
  std::vector<double> v;
  for (std::string cell; std::getline(first, cell, ',');) v.push_back(std::stod(cell));
  REQUIRE(v.size() == 4);
  CHECK(v[0] == 0.0);
  CHECK(v[3] == doctest::Approx(side["total"]["L_in"].get<double>() + side["total"]["C_in"].get<double>()));
  CHECK(side["first_zero"].get<double>() == doctest::Approx(kPi / (2 * kPi * 8.0)));
  const double contrast = side["averaged"]["contrast"].get<double>();
  CHECK(contrast > 0.0);
  CHECK(side["quadrature"]["C_in"].get<double>() == doctest::Approx(side["total"]["C_in"].get<double>()).epsilon(1e-6));
}

TEST_CASE("identical configuration gives identical bytes") {
  ConeConfig cfg;
  cfg.out = scratch("cone_a.csv").string();
  cmd_cone(cfg);
  cfg.out = scratch("cone_b.csv").string();
  cmd_cone(cfg);
  CHECK(slurp(scratch("cone_a.csv")) == slurp(scratch("cone_b.csv")));
  CHECK(slurp(scratch("cone_a.json")).substr(20) != "");
}

TEST_CASE("flag parsing and exit codes") {
  CHECK(invoke({"spectrum", "--delta", "0,1", "--out", scratch("s2.csv").string()}) == kOk);
  CHECK(invoke({"spectrum", "--bogus"}) == kConfigError);
  CHECK(invoke({}) == kConfigError);
  CHECK(invoke({"cone", "--mode", "sideways"}) == kConfigError);
  CHECK(invoke({"cone", "--mode", "exact-phase", "--out", scratch("c2.csv").string()}) == kOk);
  CHECK(invoke({"cone", "--r12-in-wavelengths", "-1", "--out", scratch("c3.csv").string()}) == kConfigError);
}

TEST_CASE("config file with flag override") {
  const auto ini = scratch("run.ini");
  {
    std::ofstream f(ini);
    f << "[spectrum]\ndelta=[1,3]\ns=0.05\nout=\"" << scratch("from_ini.csv").string() << "\"\n";
  }
  CHECK(invoke({"--config", ini.string(), "spectrum", "--s", "0.02"}) == kOk);
  const auto side = slurp(scratch("from_ini.json"));
  CHECK(side.find("\"s\": 0.02") != std::string::npos);
  CHECK(lines(scratch("from_ini.csv")).size() == 2 + 2 * 4001);
  CHECK(invoke({"--config", scratch("missing.ini").string(), "spectrum"}) == kConfigError);
}

TEST_CASE("verify subcommand: single criterion and fault injection") {
  const auto out = scratch("verify3.json");
  CHECK(invoke({"verify", "--criterion", "3", "--out", out.string()}) == kOk);
  CHECK(invoke({"verify", "--criterion", "4", "--tol", "0", "--out", out.string()}) == kVerifyFailed);
  const auto text = slurp(out);
  CHECK(text.find("\"passed\": false") != std::string::npos);
  CHECK(text.find("\"deviation\"") != std::string::npos);
  CHECK(text.find("\"seed\"") != std::string::npos);
  CHECK(invoke({"verify", "--criterion", "14", "--out", out.string()}) == kConfigError);
}
