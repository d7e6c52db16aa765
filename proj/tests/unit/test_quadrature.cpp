#include <doctest.h>

#include <cmath>
#include <numbers>

#include "meanex/error.hpp"
#include "meanex/quadrature.hpp"

using namespace meanex;

TEST_CASE("finite interval integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0).value == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
        doctest::Approx(2.0).epsilon(1e-12));
  // Integrable endpoint singularity.
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("half-line integrals") {
  CHECK(integrate_upper([](double x) { return std::exp(-x); }, 0.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_upper([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0).value ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));
  CHECK(integrate_lower([](double x) { return std::exp(x); }, 1.0, 1.0).value ==
        doctest::Approx(std::numbers::e).epsilon(1e-12));
}

TEST_CASE("failures are numeric errors") {
  CHECK_THROWS_AS((void)integrate([](double) { return std::nan(""); }, 0.0, 1.0), NumericError);
  QuadratureOptions tight{1e-300, 0.0, 200};
  CHECK_THROWS_AS((void)integrate([](double x) { return std::sin(1.0 / x); }, 0.0, 1.0, tight), NumericError);
}
