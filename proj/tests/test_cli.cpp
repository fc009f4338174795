#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace conedet::cli;
using nlohmann::json;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result run_cmd(RunConfig cfg, const std::string& fixture) {
  cfg.input_path = std::string(CONEDET_FIXTURES) + "/" + fixture;
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig cmd(const std::string& c) {
  RunConfig cfg;
  cfg.command = c;
  return cfg;
}

Result run_argv(std::vector<std::string> args) {
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("det picks the regularised method on a kernel spec") {
  const auto r = run_cmd(cmd("det"), "neumann_minus1_half.json");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(j["method"] == "regularized");
  CHECK(j["k0"] == 1);
  CHECK(j["tool"] == kToolName);
  CHECK(j["version"] == kVersion);
  CHECK(j["spec_hash"].get<std::string>().size() == 16);
}

TEST_CASE("det closed form carries cross checks") {
  const auto r = run_cmd(cmd("det"), "dirichlet_half.json");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["method"] == "closed_form");
  CHECK(j["cross_checks"].contains("finite_t"));
  CHECK(j["cross_checks"].contains("wronskian"));
  CHECK(j["concordant"] == true);
}

TEST_CASE("spectrum csv") {
  auto cfg = cmd("spectrum");
  cfg.mu_max = 10.0;
  cfg.format = "csv";
  const auto r = run_cmd(cfg, "log_case_nu0.json");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "kind,index,mu,eigenvalue");
  const auto c1 = first.find(',', first.find(',') + 1), c2 = first.find(',', c1 + 1);
  CHECK(first.substr(0, c1) == "positive,1");
  CHECK(std::abs(std::stod(first.substr(c1 + 1, c2 - c1 - 1)) - oracle::j1_zero(1)) < 1e-8);
}

TEST_CASE("exit codes") {
  auto r = run_cmd(cmd("validate"), "rank_deficient.json");
  CHECK(r.code == 2);
  CHECK(r.out.find("\"rank\"") != std::string::npos);
  CHECK(run_cmd(cmd("validate"), "dirichlet_half.json").code == 0);
  r = run_cmd(cmd("det"), "bad_schema.json");
  CHECK(r.code == 2);
  CHECK(r.err.find("$.B") != std::string::npos);
  CHECK(run_cmd(cmd("det"), "does_not_exist.json").code == 2);
  auto closed = cmd("det");
  closed.method = "closed";
  r = run_cmd(closed, "neumann_minus1_half.json");
  CHECK(r.code == 3);
  CHECK(r.err.find("numerical") != std::string::npos);
  auto bad_tol = cmd("det");
  bad_tol.tol = 0.5;
  CHECK(run_cmd(bad_tol, "dirichlet_half.json").code == 2);
  auto few = cmd("zeta");
  few.mu_max = 5.0;
  CHECK(run_cmd(few, "dirichlet_half.json").code == 3);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const char* c : {"det", "spectrum", "f-at-zero", "verify-asymptotics"}) {
    const auto a = run_cmd(cmd(c), "diag_q2.json"), b = run_cmd(cmd(c), "diag_q2.json");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cone and verification commands") {
  auto r = run_cmd(cmd("cone"), "circle_m2.json");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["degrees"].size() == 3);
  CHECK(j["degrees"][1]["value"].get<double>() == doctest::Approx(oracle::pi * oracle::pi / 4).epsilon(1e-12));

  auto vc = cmd("verify-contour");
  vc.s = 1.0;
  r = run_cmd(vc, "log_case_nu0.json");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["strictly_decreasing"] == true);
  CHECK(j["last_below_half_first"] == true);

  r = run_cmd(cmd("verify-asymptotics"), "neumann_minus1_half.json");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["strictly_decreasing"] == true);

  auto z = cmd("zeta");
  z.min_roots = 2000;
  r = run_cmd(z, "dirichlet_half.json");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["direct"]["roots_used"].get<int>() >= 2000);
  CHECK(j["rel_diff"].get<double>() < 1e-4);
}

TEST_CASE("argv front end") {
  const std::string f = std::string(CONEDET_FIXTURES) + "/n_ext_half.json";
  auto r = run_argv({"conedet", "eval-f", f, "--mu", "1.5707963267948966"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["F_normalized"].get<double>() == doctest::Approx(-oracle::pi / 2).epsilon(1e-13));
  CHECK(run_argv({"conedet", "frobnicate", f}).code == 1);
  CHECK(run_argv({"conedet", "eval-f", f, "--mu", "abc"}).code == 2);
  CHECK(run_argv({"conedet", "det", f, "--format", "xml"}).code == 1);
  CHECK(run_argv({"conedet", "--version"}).code == 0);
}
