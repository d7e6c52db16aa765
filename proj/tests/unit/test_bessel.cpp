#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/bessel.hpp>

#include "meanex/bessel.hpp"
#include "meanex/error.hpp"
#include "meanex/quadrature.hpp"

using namespace meanex;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// K_nu(x) straight from 1/2 int_0^inf y^(nu-1) exp(-x (y + 1/y) / 2) dy,
// split at y = 1 and mapped onto [0, 1] with y -> 1/y on the upper half.
double k_by_y_integral(double nu, double x) {
  const QuadratureOptions opts{1e-14, 1e-12, 1'000'000};
  const auto lower = [&](double y) { return y <= 0.0 ? 0.0 : std::pow(y, nu - 1.0) * std::exp(-0.5 * x * (y + 1.0 / y)); };
  const auto upper = [&](double y) { return y <= 0.0 ? 0.0 : std::pow(y, -nu - 1.0) * std::exp(-0.5 * x * (y + 1.0 / y)); };
  return 0.5 * (integrate(lower, 0.0, 1.0, opts).value + integrate(upper, 0.0, 1.0, opts).value);
}

}  // namespace

TEST_CASE("closed forms for half-integer orders") {
  CHECK(bessel_k(0.5, 1.0) == doctest::Approx(0.461068504448).epsilon(1e-10));
  for (double x : {0.1, 1.0, 10.0}) {
    const double k12 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
    CHECK(rel(bessel_k(0.5, x), k12) < 1e-10);
    CHECK(rel(bessel_k(1.5, x), k12 * (1.0 + 1.0 / x)) < 1e-10);
    // The integral route agrees with the closed forms too.
    CHECK(rel(std::exp(detail::log_bessel_k_integral(0.5, x)), k12) < 1e-10);
    CHECK(rel(std::exp(detail::log_bessel_k_integral(1.5, x)), k12 * (1.0 + 1.0 / x)) < 1e-10);
  }
}

TEST_CASE("K_1(1) against the y-form integral definition") {
  const double oracle = k_by_y_integral(1.0, 1.0);
  CHECK(oracle == doctest::Approx(0.6019072302).epsilon(1e-10));
  CHECK(rel(bessel_k(1.0, 1.0), oracle) < 1e-10);
}

TEST_CASE("agreement with the y-form integral across orders") {
  for (double nu : {0.0, 0.3, 1.0, 2.5, 4.2}) {
    for (double x : {0.2, 1.0, 5.0}) {
      CAPTURE(nu);
      CAPTURE(x);
      CHECK(rel(bessel_k(nu, x), k_by_y_integral(nu, x)) < 1e-9);
    }
  }
}

TEST_CASE("agreement with Boost over a wide range") {
  for (double nu : {0.0, 0.25, 1.0, 1.5, 2.3, 7.0, 15.5, 30.0}) {
    for (double x : {1e-6, 1e-3, 0.1, 1.0, 10.0, 100.0, 600.0}) {
      const double ref = boost::math::cyl_bessel_k(nu, x);
      if (!std::isfinite(ref) || ref > 1e300 || ref < 1e-300) continue;
      CAPTURE(nu);
      CAPTURE(x);
      CHECK(rel(bessel_k(nu, x), ref) < 1e-11);
    }
  }
}

TEST_CASE("symmetry and recurrence on random pairs") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> order(-6.0, 6.0);
  std::uniform_real_distribution<double> logx(std::log(0.05), std::log(50.0));
  for (int i = 0; i < 20; ++i) {
    const double nu = order(rng);
    const double x = std::exp(logx(rng));
    CAPTURE(nu);
    CAPTURE(x);
    CHECK(rel(bessel_k(nu, x), bessel_k(-nu, x)) < 1e-12);
    const double lhs = bessel_k(nu + 1.0, x);
    const double rhs = bessel_k(nu - 1.0, x) + 2.0 * nu / x * bessel_k(nu, x);
    CHECK(rel(lhs, rhs) < 1e-10);
  }
  CHECK(rel(bessel_k(2.3, 0.7), bessel_k(-2.3, 0.7)) < 1e-12);
}

TEST_CASE("log evaluation beyond double range") {
  // K_nu(x) ~ sqrt(pi / (2x)) e^-x for large x.
  const double x = 2000.0;
  CHECK(log_bessel_k(0.5, x) == doctest::Approx(0.5 * std::log(std::numbers::pi / (2 * x)) - x).epsilon(1e-12));
  CHECK(std::isfinite(log_bessel_k(3.3, 1500.0)));
  CHECK(std::isfinite(log_bessel_k(60.0, 1e-3)));
}

TEST_CASE("domain and range errors") {
  CHECK_THROWS_AS((void)bessel_k(1.0, 0.0), InputError);
  CHECK_THROWS_AS((void)bessel_k(1.0, -1.0), InputError);
  CHECK_THROWS_AS((void)bessel_k(200.0, 1e-6), NumericError);
}
