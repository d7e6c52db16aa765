#include "meanex/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "meanex/error.hpp"

namespace meanex {
namespace {

// log cosh(a) without overflow.
double log_cosh(double a) {
  a = std::abs(a);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// Integrand of int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt, in log space. The
// factor e^{-x} is kept out so large x does not swamp the t dependence.
double log_integrand(double nu, double x, double t) {
  const double s = std::sinh(0.5 * t);
  return -2.0 * x * s * s + log_cosh(nu * t);
}

void check_argument(double nu, double x) {
  if (!std::isfinite(nu)) throw InputError("bessel_k: order must be finite");
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InputError("bessel_k: argument must be positive and finite, got " + std::to_string(x));
  }
}

}  // namespace

namespace detail {

double log_bessel_k_half_integer(int n, double x) {
  // K_{n+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_k (n+k)! / (k! (n-k)! (2x)^k)
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= n; ++k) {
    term *= static_cast<double>((n + k) * (n - k + 1)) / (static_cast<double>(k) * 2.0 * x);
    sum += term;
  }
  return 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x + std::log(sum);
}

double log_bessel_k_integral(double nu, double x) {
  nu = std::abs(nu);
  // The integrand peaks near t* = asinh(nu / x) with width ~ (x^2 + nu^2)^(-1/4).
  const double peak = std::asinh(nu / x);
  const double ref = log_integrand(nu, x, peak);
  const double width = 1.0 / std::sqrt(std::sqrt(x * x + nu * nu));
  double h = std::min(0.5, width);

  // Truncate where the integrand falls below 1e-19 of its peak value.
  constexpr double kLogCutoff = 43.75;
  double upper = peak + h;
  while (log_integrand(nu, x, upper) > ref - kLogCutoff) upper += std::max(h, 0.25 * upper);

  auto term = [&](double t) { return std::exp(log_integrand(nu, x, t) - ref); };
  std::size_t count = static_cast<std::size_t>(std::ceil(upper / h));
  double sum = 0.5 * term(0.0);
  for (std::size_t k = 1; k <= count; ++k) sum += term(static_cast<double>(k) * h);
  double estimate = h * sum;

  for (int level = 0; level < 16; ++level) {
    double mids = 0.0;
    for (std::size_t k = 0; k < count; ++k) mids += term((static_cast<double>(k) + 0.5) * h);
    sum += mids;
    h *= 0.5;
    count *= 2;
    const double refined = h * sum;
    const double change = std::abs(refined - estimate);
    estimate = refined;
    if (level >= 1 && change <= 1e-10 * refined) break;
  }
  return ref - x + std::log(estimate);
}

}  // namespace detail

double log_bessel_k(double nu, double x) {
  check_argument(nu, x);
  const double a = std::abs(nu);
  const double n = a - 0.5;
  if (n >= 0.0 && n == std::floor(n) && n <= detail::kMaxHalfIntegerOrder) {
    return detail::log_bessel_k_half_integer(static_cast<int>(n), x);
  }
  return detail::log_bessel_k_integral(a, x);
}

double bessel_k(double nu, double x) {
  const double lk = log_bessel_k(nu, x);
  if (lk > 709.0) throw NumericError("range: bessel_k overflows for order " + std::to_string(nu));
  return std::exp(lk);
}

}  // namespace meanex
