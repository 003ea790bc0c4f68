#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fockmult/json_io.hpp"

using fockmult::Json;
using namespace fockmult::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json report(const Result& r) { return Json::parse(r.out); }

const std::string kFree2 = R"({"kind":"free","rank":2})";
const std::string kZplus = R"({"kind":"zplus"})";
const std::string kG1PlusG2 = R"([{"elem":{"word":[1]},"re":1},{"elem":{"word":[2]},"re":1}])";

}  // namespace

TEST_CASE("norm of g1 + g2") {
  const Result r = run_cli({"norm", "--spec", kFree2, "--symbol", kG1PlusG2, "--level", "4"});
  REQUIRE(r.code == kPass);
  const Json j = report(r);
  CHECK(std::abs(j["results"]["norm"].get<double>() - std::sqrt(2.0)) <= 1e-10);
  CHECK(j["verdict"] == "converged");
  CHECK(j["config"]["level"] == 4);
  CHECK(j["config"]["tol"] == 1e-12);
  CHECK(j["config"]["capacity"] == 200000);
}

TEST_CASE("norm of the unit") {
  const Result r = run_cli({"norm", "--spec", kZplus, "--symbol", R"([{"elem":{"int":0},"re":1}])"});
  REQUIRE(r.code == kPass);
  CHECK(report(r)["results"]["norm"] == 1.0);
}

TEST_CASE("usage and parse errors exit 1") {
  CHECK(run_cli({}).code == kUsage);
  CHECK(run_cli({"norm", "--symbol", kG1PlusG2}).code == kUsage);
  const Result bad = run_cli({"norm", "--spec", kFree2, "--symbol", R"([{"elem":{"word":[3]},"re":1}])"});
  CHECK(bad.code == kUsage);
  CHECK(bad.err.find("error:") != std::string::npos);
  CHECK(run_cli({"norm", "--spec", "{", "--symbol", kG1PlusG2}).code == kUsage);
  CHECK(run_cli({"verify", "bogus", "--spec", kFree2}).code == kUsage);
  CHECK(run_cli({"sweep", "--spec", kFree2, "--symbol", kG1PlusG2, "--levels", "3,2"}).code == kUsage);
  CHECK(run_cli({"norm", "--spec", kFree2, "--symbol", kG1PlusG2, "--format", "xml"}).code == kUsage);
  CHECK(run_cli({"--help"}).code == kPass);
}

TEST_CASE("sweeps") {
  const Result unit = run_cli({"sweep", "--spec", kFree2, "--symbol", R"([{"elem":{"word":[]},"re":1}])",
                               "--levels", "1,2,3"});
  CHECK(unit.code == kPass);
  CHECK(report(unit)["results"]["converged"] == true);

  // 1 + z keeps growing by more than the default tolerance between these levels
  const Result growing = run_cli({"sweep", "--spec", kZplus, "--symbol",
                                  R"([{"elem":{"int":0},"re":1},{"elem":{"int":1},"re":1}])", "--levels", "2,4"});
  CHECK(growing.code == kNotConverged);
  CHECK(report(growing)["verdict"] == "not_converged");

  const Result big = run_cli({"sweep", "--spec", kFree2, "--symbol", kG1PlusG2, "--levels", "4,20"});
  CHECK(big.code == kUsage);
  CHECK(big.out.empty());
  CHECK(run_cli({"sweep", "--spec", kFree2, "--symbol", kG1PlusG2, "--levels", "2,4", "--cap", "10"}).code == kUsage);
}

TEST_CASE("verifications") {
  CHECK(run_cli({"verify", "cstar", "--spec", R"({"kind":"cyclic","n":3})", "--trials", "100"}).code == kPass);
  CHECK(run_cli({"verify", "flip", "--spec", kFree2, "--level", "3", "--trials", "10"}).code == kPass);
  CHECK(run_cli({"verify", "cstar", "--spec", kZplus}).code == kUsage);
  CHECK(run_cli({"verify", "ustar", "--spec", R"({"kind":"z"})", "--trials", "10"}).code == kPass);
  CHECK(run_cli({"verify", "ruan", "--spec", R"({"kind":"cyclic","n":3})", "--trials", "3", "--n", "2"}).code ==
        kPass);
  CHECK(run_cli({"verify", "ruan", "--spec", R"({"kind":"cyclic","n":3})", "--n", "5"}).code == kUsage);

  const Result s3 = run_cli({"verify", "abelian", "--spec",
                             R"({"kind":"group","table":[[0,1,2,3,4,5],[1,0,4,5,2,3],[2,5,0,4,3,1],)"
                             R"([3,4,5,0,1,2],[4,3,1,2,5,0],[5,2,3,1,0,4]]})"});
  CHECK(s3.code == kFailed);
  CHECK(report(s3)["results"]["witness"].is_object());
}

TEST_CASE("identifications") {
  const std::string cyclic3 = R"({"kind":"cyclic","n":3})";
  const Result c = run_cli({"identify", "circulant", "--spec", cyclic3, "--symbol",
                            R"([{"elem":{"int":0},"re":1},{"elem":{"int":1},"re":2},{"elem":{"int":2},"re":3}])"});
  REQUIRE(c.code == kPass);
  const Json m = report(c)["results"]["matrix"];
  // row i, column j holds phi(i - j mod 3)
  CHECK(m[0][0][0] == 1.0);
  CHECK(m[1][0][0] == 2.0);
  CHECK(m[0][1][0] == 3.0);
  CHECK(m[2][1][0] == 2.0);

  const Result p = run_cli({"identify", "popescu", "--spec", kFree2, "--symbol", R"([{"elem":{"word":[1]},"re":1}])"});
  REQUIRE(p.code == kPass);
  for (const auto& v : report(p)["results"]["norms"]) CHECK(v == 1.0);

  const Result h = run_cli({"identify", "hardy", "--spec", kZplus, "--symbol",
                            R"([{"elem":{"int":0},"re":1},{"elem":{"int":1},"re":1}])"});
  REQUIRE(h.code == kPass);
  CHECK(std::abs(report(h)["results"]["gap"].get<double>()) <= 1e-4);
  CHECK(report(h)["results"]["grid_value"] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("reports are deterministic without timing") {
  const std::vector<std::string> args{"verify", "ruan", "--spec", kFree2, "--trials", "3", "--seed", "7",
                                      "--no-timing"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  CHECK(a.code == kPass);
  CHECK(a.out == b.out);
  CHECK(report(a)["runtime_ms"] == 0.0);
  CHECK(report(a)["config"]["seed"] == 7);
}

TEST_CASE("csv output and --out") {
  const Result csv =
      run_cli({"norm", "--spec", kFree2, "--symbol", kG1PlusG2, "--level", "2", "--format", "csv"});
  REQUIRE(csv.code == kPass);
  CHECK(csv.out.rfind("level,norm\n2,1.414213562", 0) == 0);

  const std::string path = "fockmult_cli_test_report.json";
  const Result file = run_cli({"norm", "--spec", kFree2, "--symbol", kG1PlusG2, "--out", path});
  REQUIRE(file.code == kPass);
  CHECK(file.out.empty());
  std::ifstream in(path);
  const Json j = Json::parse(in);
  CHECK(j["verdict"] == "converged");
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("spec and symbol from files") {
  const std::string spec_path = "fockmult_cli_test_spec.json";
  const std::string symbol_path = "fockmult_cli_test_symbol.json";
  std::ofstream(spec_path) << kFree2;
  std::ofstream(symbol_path) << kG1PlusG2;
  const Result r = run_cli({"norm", "--spec", "@" + spec_path, "--symbol", "@" + symbol_path});
  CHECK(r.code == kPass);
  CHECK(run_cli({"norm", "--spec", "@missing_file.json", "--symbol", kG1PlusG2}).code == kUsage);
  std::remove(spec_path.c_str());
  std::remove(symbol_path.c_str());
}
