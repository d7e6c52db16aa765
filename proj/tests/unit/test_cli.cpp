#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "meanex/cli.hpp"
#include "meanex/csv.hpp"
#include "meanex/mef.hpp"

namespace fs = std::filesystem;
using meanex::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "meanex_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

const std::string kThree = MEANEX_TEST_DATA "/three_values.csv";
const std::string kOhlcv = MEANEX_TEST_DATA "/synthetic_ohlcv.csv";

}  // namespace

TEST_CASE("emef on the three-value fixture") {
  const auto r = call({"emef", "--data", kThree, "--grid", "order-stats"});
  CHECK(r.code == 0);
  std::ostringstream expect;
  const meanex::Sample s({1, 2, 3});
  meanex::write_curve_csv(expect, meanex::empirical_mef_curve(s, meanex::Grid({1, 2})));
  CHECK(r.out == expect.str());
  CHECK(r.out == "u,e\n1,1.5\n2,1\n");
}

TEST_CASE("exit codes") {
  CHECK(call({"emef", "--data", "/nonexistent/x.csv"}).code == 2);
  CHECK(call({"emef", "--data", "/nonexistent/x.csv"}).err.find("cannot open") != std::string::npos);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"emef", "--bogus"}).code == 2);
  CHECK(call({"stallion"}).code == 2);  // --dist is required
  CHECK(call({"stallion", "--dist", "gumbel(mu=0)"}).code == 2);
  CHECK(call({"emef", "--data", kThree, "--grid", "zero"}).code == 2);
  CHECK(call({"fit-gpd", "--data", kThree, "--dist", "exponential"}).code == 2);  // conflicting sources
  CHECK(call({"band", "--dist", "exponential(lambda=1)", "--size", "10", "--u0", "0", "--u1", "1"}).code == 3);
  CHECK(call({"emef", "--data", MEANEX_TEST_DATA "/constant.csv"}).code == 3);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("csv and svg artifacts") {
  const auto csv = scratch("stallion.csv");
  const auto svg = scratch("stallion.svg");
  const std::vector<std::string> args{"stallion", "--dist", "exponential(lambda=2)", "--reps", "40", "--size", "300",
                                      "--grid", "25", "--seed", "9", "--csv", csv.string(), "--svg", svg.string()};
  const auto r = call(args);
  REQUIRE(r.code == 0);
  const std::string first = slurp(csv);
  CHECK(first.rfind("u,e\n", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), '\n') == 26);
  REQUIRE(call(args).code == 0);
  CHECK(slurp(csv) == first);

  const std::string doc = slurp(svg);
  CHECK(doc.rfind("<?xml", 0) == 0);
  CHECK(doc.find("</svg>") != std::string::npos);
  CHECK(doc.find("threshold u") != std::string::npos);
  // Stallion plus the true mef.
  std::size_t paths = 0;
  for (auto p = doc.find("<path"); p != std::string::npos; p = doc.find("<path", p + 1)) ++paths;
  CHECK(paths == 2);
  CHECK(doc.find(">stallion<") != std::string::npos);
  CHECK(doc.find(">true mef<") != std::string::npos);
}

TEST_CASE("fit-gpd on GPD draws") {
  const auto r = call({"fit-gpd", "--dist", "gpd(xi=0.25,beta=1)", "--size", "4000", "--seed", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("xi_hat,beta_hat,a_hat,b_hat,r2\n", 0) == 0);
  const auto xi_at = r.err.find("xi_hat=");
  const auto beta_at = r.err.find("beta_hat=");
  REQUIRE(xi_at != std::string::npos);
  REQUIRE(beta_at != std::string::npos);
  CHECK(std::abs(std::stod(r.err.substr(xi_at + 7)) - 0.25) < 0.1);
  CHECK(std::abs(std::stod(r.err.substr(beta_at + 9)) - 1.0) < 0.15);
  CHECK(r.err.find("tail=heavy") != std::string::npos);
}

TEST_CASE("band, coverage, fdelta and gh commands") {
  auto r = call({"band", "--dist", "exponential(lambda=1)", "--size", "4000", "--u0", "0", "--u1", "1", "--grid", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("u,e,lower,upper\n", 0) == 0);
  CHECK(r.err.find("mode=oracle") != std::string::npos);

  r = call({"band", "--data", kOhlcv, "--log-returns", "--grid", "order-stats", "--u0", "-0.02", "--u1", "0"});
  CHECK(r.code == 0);
  CHECK(r.err.find("mode=plugin") != std::string::npos);

  r = call({"coverage", "--dist", "exponential(lambda=1)", "--u0", "0", "--u1", "1", "--reps", "20", "--size", "2000"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# name=coverage,seed=1,reps=20\nmetric,value\n", 0) == 0);
  CHECK(call({"coverage", "--dist", "exponential"}).code == 2);

  r = call({"fdelta", "--dist", "exponential(lambda=2)", "--u0", "0", "--u1", "1", "--deltas", "0.1,0.01"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("delta,statistic\n0.1,", 0) == 0);

  r = call({"gh", "pdf", "--dist", "gh(lambda=1,alpha=1.5,beta=-0.5,delta=0.75,mu=0.2)", "--grid", "11"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("u,pdf\n", 0) == 0);
  CHECK(r.err.find("class=hyperbolic") != std::string::npos);

  r = call({"gh", "sample", "--dist", "gig(lambda=1,chi=1,psi=1)", "--size", "5", "--seed", "4"});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
  CHECK(call({"gh", "sample", "--dist", "normal", "--size", "5"}).code == 2);
}

TEST_CASE("ingest") {
  auto r = call({"ingest", "--data", kOhlcv, "--kind", "simple"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("date,simple_return\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 500);
  CHECK(r.err.find("records=500") != std::string::npos);
  r = call({"ingest", "--data", kOhlcv, "--monthly", "--log-returns"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("date,log_return\n", 0) == 0);
  CHECK(call({"ingest", "--data", kOhlcv, "--field", "adjclose"}).code == 2);
}

TEST_CASE("compare is reproducible") {
  const auto csv = scratch("compare.csv");
  const auto svg = scratch("compare.svg");
  const std::vector<std::string> args{"compare", "--data", kOhlcv, "--field", "close", "--log-returns",
                                      "--dist", "gh(lambda=-0.5,alpha=7.6,beta=-1.24,delta=0.052,mu=0.0103)",
                                      "--reps", "30", "--grid", "40", "--seed", "11",
                                      "--csv", csv.string(), "--svg", svg.string()};
  auto r = call(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("sup_deviation=") != std::string::npos);
  const std::string first = slurp(csv);
  CHECK(first.rfind("u,e_data,e_fit\n", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), '\n') == 41);
  r = call(args);
  REQUIRE(r.code == 0);
  CHECK(slurp(csv) == first);
  CHECK(slurp(svg).find(">data emef<") != std::string::npos);
}
