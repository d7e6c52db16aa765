#include <doctest.h>

#include <regex>
#include <sstream>
#include <string>

#include "meanex/band.hpp"
#include "meanex/csv.hpp"
#include "meanex/error.hpp"
#include "meanex/gof.hpp"
#include "meanex/mef.hpp"
#include "meanex/montecarlo.hpp"
#include "meanex/svg.hpp"

using namespace meanex;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

// Minimal structural check: every opened element is closed in order.
bool balanced_xml(const std::string& doc) {
  std::vector<std::string> stack;
  const std::regex tag(R"(<(/?)([a-zA-Z][a-zA-Z0-9]*)[^>]*?(/?)>)");
  for (auto it = std::sregex_iterator(doc.begin(), doc.end(), tag); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (m[3].length() > 0) continue;
    if (m[1].length() == 0) {
      stack.push_back(m[2]);
    } else {
      if (stack.empty() || stack.back() != m[2]) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(std::nullopt) == "nan");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("curve and band csv") {
  const Sample s({1, 2, 3});
  std::ostringstream out;
  write_curve_csv(out, empirical_mef_curve(s, Grid({0, 2, 10})));
  CHECK(out.str() == "u,e\n0,2\n2,1\n10,0\n");

  const auto b = consistency_band(Sample({0.0, 0.5, 1.0, 1.5, 2.0}), Grid({0.0, 0.5}), band_constants(0.0, 1.0, 1e-3, 1e-3),
                                  BandMode::oracle(0.5, 1.0));
  std::ostringstream bo;
  write_band_csv(bo, b);
  const auto text = bo.str();
  CHECK(text.rfind("u,e,lower,upper\n", 0) == 0);
  CHECK(count(text, "\n") == 3);

  std::ostringstream undef;
  write_curve_csv(undef, empirical_mef_curve(s, Grid({0, 10}), EmptyPolicy::kUndefined));
  CHECK(undef.str() == "u,e\n0,2\n10,nan\n");
}

TEST_CASE("columns, fit and report csv") {
  std::ostringstream out;
  write_columns_csv(out, Grid({0.0, 1.0}), {"a", "b"}, {{1.0, 2.0}, {std::nullopt, 0.25}});
  CHECK(out.str() == "u,a,b\n0,1,nan\n1,2,0.25\n");
  CHECK_THROWS_AS(write_columns_csv(out, Grid({0.0}), {"a"}, {{1.0, 2.0}}), InputError);

  GpdFit f;
  f.params = {0.25, 1.0};
  f.ols.a_hat = 1.0 / 3.0;
  f.ols.b_hat = 4.0 / 3.0;
  f.ols.r2 = 1.0;
  std::ostringstream fo;
  write_fit_csv(fo, f);
  CHECK(fo.str() == "xi_hat,beta_hat,a_hat,b_hat,r2\n0.25,1,0.333333333333,1.33333333333,1\n");

  ExperimentReport r;
  r.name = "coverage";
  r.seed = 7;
  r.replicate_count = 20;
  r.add("coverage", 0.95);
  std::ostringstream ro;
  write_report_csv(ro, r);
  CHECK(ro.str() == "# name=coverage,seed=7,reps=20\nmetric,value\ncoverage,0.95\n");
}

TEST_CASE("sample csv") {
  std::istringstream in("x\n3\n# comment\n1,ignored\n\n2\n");
  const Sample s = read_sample_csv(in);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == 1.0);
  CHECK(s[2] == 3.0);
  std::istringstream bad("1\nfoo\n");
  CHECK_THROWS_WITH_AS((void)read_sample_csv(bad), doctest::Contains("line 2"), InputError);
  std::istringstream empty("x\n");
  CHECK_THROWS_AS((void)read_sample_csv(empty), InputError);
  CHECK_THROWS_AS((void)read_sample_file("/nonexistent/sample.csv"), InputError);
  CHECK(read_sample_file(MEANEX_TEST_DATA "/three_values.csv").size() == 3);
}

TEST_CASE("svg structure") {
  const Sample s({1, 2, 3, 4, 7});
  const auto grid = Grid::linspace(1.0, 6.0, 20);
  const auto b = consistency_band(s, Grid::linspace(1.0, 2.0, 5), band_constants(1.0, 2.0, 1e-3, 1e-3),
                                  BandMode::oracle(0.9, 3.0));
  PlotSpec spec;
  spec.title = "emef & band <test>";
  spec.series.push_back(curve_series(empirical_mef_curve(s, grid, EmptyPolicy::kUndefined), "data"));
  for (auto& p : band_series(b, "band")) spec.series.push_back(std::move(p));
  const std::string svg = render_svg(spec);

  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(balanced_xml(svg));
  CHECK(count(svg, "<path") == 4);
  CHECK(count(svg, "<line") >= 4);
  CHECK(svg.find("threshold u") != std::string::npos);
  CHECK(svg.find("mean excess e(u)") != std::string::npos);
  CHECK(svg.find("emef &amp; band &lt;test&gt;") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find(">data<") != std::string::npos);
  CHECK(render_svg(spec) == svg);

  CHECK_THROWS_AS((void)render_svg(PlotSpec{}), InputError);
  spec.width = 0;
  CHECK_THROWS_AS((void)render_svg(spec), InputError);
}
