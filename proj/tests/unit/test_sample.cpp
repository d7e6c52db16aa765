#include <doctest.h>

#include <cmath>
#include <limits>

#include "meanex/error.hpp"
#include "meanex/sample.hpp"

using namespace meanex;

TEST_CASE("sample sorts and rejects bad input") {
  const Sample s({3.0, 1.0, 2.0});
  CHECK(s.size() == 3);
  CHECK(s[0] == 1.0);
  CHECK(s.max() == 3.0);
  CHECK(s.mean() == doctest::Approx(2.0));
  CHECK_THROWS_AS(Sample(std::vector<double>{}), InputError);
  CHECK_THROWS_AS(Sample({1.0, std::numeric_limits<double>::quiet_NaN()}), InputError);
  CHECK_THROWS_AS(Sample({std::numeric_limits<double>::infinity()}), InputError);
}

TEST_CASE("exceedance counts use strict inequality") {
  const Sample s({1.0, 2.0, 2.0, 3.0});
  CHECK(s.count_above(2.0) == 1);
  CHECK(s.count_above(0.5) == 4);
  CHECK(s.count_above(3.0) == 0);
  CHECK(s.first_above(1.0) == 1);
}

TEST_CASE("type-7 quantile") {
  const Sample s({0.0, 10.0});
  CHECK(s.quantile(0.98) == doctest::Approx(9.8));
  CHECK(s.quantile(0.0) == 0.0);
  CHECK(s.quantile(1.0) == 10.0);
  CHECK_THROWS_AS((void)s.quantile(1.5), InputError);
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid({1.0, 1.0}), InputError);
  CHECK_THROWS_AS(Grid({2.0, 1.0}), InputError);
  CHECK_THROWS_AS(Grid(std::vector<double>{}), InputError);
  const Grid g = Grid::linspace(0.0, 1.0, 5);
  CHECK(g.size() == 5);
  CHECK(g[2] == doctest::Approx(0.5));
  CHECK(g.back() == 1.0);
}

TEST_CASE("default grid policies") {
  SUBCASE("order statistics drop duplicates and the maximum") {
    const Grid g = default_grid(Sample({1.0, 2.0, 2.0, 3.0}), GridPolicy::order_statistics());
    REQUIRE(g.size() == 2);
    CHECK(g[0] == 1.0);
    CHECK(g[1] == 2.0);
  }
  SUBCASE("linspace to the 98th percentile") {
    const Grid g = default_grid(Sample({0.0, 10.0}), GridPolicy::linspace(3));
    REQUIRE(g.size() == 3);
    CHECK(g[0] == doctest::Approx(0.0));
    CHECK(g[1] == doctest::Approx(4.9));
    CHECK(g[2] == doctest::Approx(9.8));
  }
  SUBCASE("degenerate sample") {
    CHECK_THROWS_WITH_AS((void)default_grid(Sample({5.0, 5.0, 5.0}), GridPolicy::linspace(3)), "degenerate sample",
                         NumericError);
  }
}
