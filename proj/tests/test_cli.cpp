#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "opcorr/cli.hpp"

using opcorr::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sys(const std::string& name) { return std::string(OPCORR_SYSTEMS_DIR) + "/" + name + ".json"; }

nlohmann::json density_at(const nlohmann::json& arr, const std::string& l, const std::string& r) {
  for (const auto& e : arr) {
    if (e["point"] == nlohmann::json::array({l, r})) return e;
  }
  FAIL("point not found");
  return {};
}

}  // namespace

TEST_CASE("cli apply") {
  const auto r = invoke({"apply", "--system", sys("deterministic_pair"), "--observable", "A1", "--state", "biased"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1/3 (0.333333)") != std::string::npos);
  CHECK(r.out.find("2/3 (0.666667)") != std::string::npos);
}

TEST_CASE("cli densities on bell_diagonal at a pure state") {
  const auto r = invoke({"--json", "densities", "--system", sys("bell_diagonal"), "--joint", "diagonal", "--state", "psi"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  for (const auto& e : doc["rho_c"]) CHECK(e["exact"] == "1");
  CHECK(density_at(doc["rho_e"], "0", "0")["exact"] == "2");
  CHECK(density_at(doc["rho_e"], "1", "1")["exact"] == "2");
  CHECK(density_at(doc["rho_e"], "0", "1")["exact"] == "0");
  CHECK(doc["max_departure"]["rho_e"] == "1");
}

TEST_CASE("cli --json after the subcommand") {
  const auto r = invoke({"densities", "--system", sys("bell_diagonal"), "--joint", "diagonal", "--state", "psi", "--json"});
  REQUIRE(r.code == 0);
  nlohmann::json parsed;
  CHECK_NOTHROW(parsed = nlohmann::json::parse(r.out));
}

TEST_CASE("cli densities marks undefined points") {
  const auto r =
      invoke({"--json", "densities", "--system", sys("deterministic_pair"), "--joint", "product", "--state", "pure_w1"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(density_at(doc["rho_c"], "a", "x")["exact"] == "1");
  CHECK(density_at(doc["rho_c"], "b", "y")["exact"].is_null());
}

TEST_CASE("cli classify") {
  auto r = invoke({"classify", "--system", sys("deterministic_pair"), "--joint", "product", "--state", "mixed"});
  CHECK(r.code == 0);
  CHECK(r.out.find(": classical_only") != std::string::npos);
  r = invoke({"--json", "classify", "--system", sys("mixed_entangled"), "--joint", "aligned", "--state", "mixed"});
  CHECK(nlohmann::json::parse(r.out)["classification"] == "both");
  r = invoke({"--json", "classify", "--system", sys("bell_diagonal"), "--joint", "diagonal", "--state", "mixed"});
  CHECK(nlohmann::json::parse(r.out)["classification"] == "independent");
}

TEST_CASE("cli json output is stable across runs") {
  const std::vector<std::string> args{"--json", "classify", "--system", sys("mixed_entangled"), "--joint", "comonotone",
                                      "--state", "skewed"};
  CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("cli verify") {
  for (const char* name : {"deterministic_pair", "bell_diagonal", "quadratic_uncorrelated", "mixed_entangled"}) {
    const auto r = invoke({"verify", "--system", sys(name)});
    CAPTURE(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("cli couplings") {
  auto r = invoke({"--json", "couplings", "--system", sys("bell_diagonal"), "--left", "A1", "--right", "A2", "--at",
                   "psi", "--vertices"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["couplings"].size() == 2);

  r = invoke({"--json", "couplings", "--system", sys("bell_diagonal"), "--left", "A1", "--right", "A2", "--at", "psi",
              "--extremal"});
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["tv_distance_from_product"]["exact"] == "1/2");
  CHECK(density_at(doc["couplings"][0], "0", "0")["exact"] == "1/2");

  r = invoke({"couplings", "--system", sys("mixed_entangled"), "--left", "A1", "--right", "A2", "--at", "w1",
              "--comonotone"});
  CHECK(r.code == 0);
  CHECK(r.out.find("3/4") != std::string::npos);

  r = invoke({"couplings", "--system", sys("bell_diagonal"), "--left", "A1", "--right", "A2", "--at", "nowhere"});
  CHECK(r.code == 1);
}

TEST_CASE("cli enumeration bound comes from the environment") {
  ::setenv("OPCORR_ENUM_BOUND", "3", 1);
  const auto r = invoke({"couplings", "--system", sys("bell_diagonal"), "--left", "A1", "--right", "A2", "--at", "psi",
                         "--vertices"});
  ::unsetenv("OPCORR_ENUM_BOUND");
  CHECK(r.code == 2);
  CHECK(r.err.find("EnumerationBoundExceeded") != std::string::npos);
}

TEST_CASE("cli simulate") {
  auto r = invoke({"--json", "simulate", "--system", sys("bell_diagonal"), "--joint", "diagonal", "--state", "psi",
                   "--n", "10000", "--seed", "5"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["joint"]["total"] == 10000);
  CHECK(doc["joint"]["within_4_sigma"] == true);
  CHECK(r.out == invoke({"--json", "simulate", "--system", sys("bell_diagonal"), "--joint", "diagonal", "--state",
                         "psi", "--n", "10000", "--seed", "5"})
                     .out);

  r = invoke({"--json", "simulate", "--system", sys("bell_diagonal"), "--joint", "diagonal", "--state", "psi", "--n",
              "1000", "--alternating"});
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["first"]["total"] == 500);
  CHECK_FALSE(doc.contains("joint"));

  r = invoke({"simulate", "--system", sys("bell_diagonal"), "--joint", "diagonal", "--state", "psi", "--n", "7",
              "--alternating"});
  CHECK(r.code == 2);
}

TEST_CASE("cli covariance") {
  auto r = invoke({"--json", "covariance", "--system", sys("quadratic_uncorrelated"), "--joint", "vector", "--state",
                   "uniform"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["covariance"]["exact"] == "0");
  CHECK(doc["independent"] == false);
}

TEST_CASE("cli exit codes") {
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"verify"}).code == 1);
  CHECK(invoke({"verify", "--system", "/nonexistent.json"}).code == 1);
  CHECK(invoke({"apply", "--system", sys("bell_diagonal"), "--observable", "Z", "--state", "psi"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("cli verify on an invalid system exits 2 and names the object") {
  const std::string path = "opcorr_cli_invalid_system.json";
  {
    std::ofstream f(path);
    f << R"({"phase_space": {"id": "W", "points": ["w1", "w2"]}, "outcome_spaces": [],
             "states": {"lopsided": {"w1": "1/2", "w2": "1/3"}}})";
  }
  const auto r = invoke({"verify", "--system", path});
  std::remove(path.c_str());
  CHECK(r.code == 2);
  CHECK(r.err.find("state 'lopsided'") != std::string::npos);
  CHECK(r.err.find("5/6") != std::string::npos);
}
