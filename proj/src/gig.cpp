#include "meanex/gig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "meanex/bessel.hpp"
#include "meanex/error.hpp"

namespace meanex {
namespace {

// Mode of y^(lambda-1) exp(-omega (y + 1/y) / 2), lambda >= 0.
double gig_mode(double lambda, double omega) {
  if (lambda >= 1.0) {
    return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
  }
  return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// Ratio-of-uniforms without mode shift; 0 <= lambda, suited to moderate omega.
double rou_noshift(double lambda, double omega, Rng& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double ym = ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
  const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);
  for (;;) {
    const double u = um * uniform_open(rng);
    const double v = uniform_open(rng);
    const double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Ratio-of-uniforms with the bounding rectangle shifted to the mode.
double rou_shift(double lambda, double omega, Rng& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);

  // Roots of the cubic whose solutions bound the shifted region.
  const double a = -(2.0 * (lambda + 1.0) / omega + xm);
  const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
  const double c = xm;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double fi = std::acos(-q / (2.0 * std::sqrt(-(p * p * p) / 27.0)));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(fi / 3.0 + 4.0 / 3.0 * std::numbers::pi) - a / 3.0;
  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);

  for (;;) {
    const double u = uminus + uniform_open(rng) * (uplus - uminus);
    const double v = uniform_open(rng);
    const double x = u / v + xm;
    if (x <= 0.0) continue;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Rejection from a three-piece hat; 0 <= lambda < 1 with small omega, where
// the density is not T-concave.
double non_t_concave(double lambda, double omega, Rng& rng) {
  const double xm = gig_mode(lambda, omega);
  const double x0 = omega / (1.0 - lambda);
  const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
  const double a0 = k0 * x0;
  double k1 = 0.0;
  double a1 = 0.0;
  double k2 = 0.0;
  double a2 = 0.0;
  if (x0 >= 2.0 / omega) {
    k2 = std::pow(x0, lambda - 1.0);
    a2 = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
  } else {
    k1 = std::exp(-omega);
    a1 = lambda == 0.0 ? k1 * std::log(2.0 / (omega * omega))
                       : k1 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
    k2 = std::pow(2.0 / omega, lambda - 1.0);
    a2 = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double total = a0 + a1 + a2;

  for (;;) {
    double v = total * uniform_open(rng);
    double x = 0.0;
    double hx = 0.0;
    if (v <= a0) {
      x = x0 * v / a0;
      hx = k0;
    } else if ((v -= a0) <= a1) {
      if (lambda == 0.0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, lambda) + lambda / k1 * v, 1.0 / lambda);
        hx = k1 * std::pow(x, lambda - 1.0);
      }
    } else {
      v -= a1;
      const double start = std::max(x0, 2.0 / omega);
      x = -2.0 / omega * std::log(std::exp(-omega / 2.0 * start) - omega / (2.0 * k2) * v);
      hx = k2 * std::exp(-omega / 2.0 * x);
    }
    const double u = uniform_open(rng) * hx;
    if (std::log(u) <= (lambda - 1.0) * std::log(x) - omega / 2.0 * (x + 1.0 / x)) return x;
  }
}

}  // namespace

void validate(const GigParams& p) {
  const bool finite = std::isfinite(p.lambda) && std::isfinite(p.chi) && std::isfinite(p.psi);
  const bool ok = finite && ((p.lambda < 0.0 && p.chi > 0.0 && p.psi >= 0.0) ||
                             (p.lambda == 0.0 && p.chi > 0.0 && p.psi > 0.0) ||
                             (p.lambda > 0.0 && p.chi >= 0.0 && p.psi > 0.0));
  if (!ok) throw InputError("gig: parameters outside the domain");
}

double gig_draw(const GigParams& p, Rng& rng) {
  if (p.psi == 0.0) {
    // Inverse gamma with shape -lambda and scale chi/2.
    std::gamma_distribution<double> gamma(-p.lambda, 1.0);
    return 0.5 * p.chi / gamma(rng);
  }
  if (p.chi == 0.0) {
    std::gamma_distribution<double> gamma(p.lambda, 2.0 / p.psi);
    return gamma(rng);
  }
  const double lambda = std::abs(p.lambda);
  const double omega = std::sqrt(p.chi * p.psi);
  const double scale = std::sqrt(p.chi / p.psi);
  double y = 0.0;
  if (lambda > 2.0 || omega > 3.0) {
    y = rou_shift(lambda, omega, rng);
  } else if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) {
    y = rou_noshift(lambda, omega, rng);
  } else {
    y = non_t_concave(lambda, omega, rng);
  }
  // GIG(-l, w, w) is the law of 1 / GIG(l, w, w).
  return p.lambda < 0.0 ? scale / y : scale * y;
}

Sample gig_sample(const GigParams& p, Rng& rng, std::size_t n) {
  validate(p);
  if (n == 0) throw InputError("gig_sample: n must be positive");
  std::vector<double> out(n);
  for (auto& v : out) v = gig_draw(p, rng);
  return Sample(std::move(out));
}

double gig_moment(const GigParams& p, double k) {
  validate(p);
  if (p.psi == 0.0) {
    const double shape = -p.lambda;
    if (!(k < shape)) throw NumericError("gig_moment: moment is infinite");
    return std::exp(k * std::log(0.5 * p.chi) + std::lgamma(shape - k) - std::lgamma(shape));
  }
  if (p.chi == 0.0) {
    return std::exp(k * std::log(2.0 / p.psi) + std::lgamma(p.lambda + k) - std::lgamma(p.lambda));
  }
  const double omega = std::sqrt(p.chi * p.psi);
  return std::exp(0.5 * k * std::log(p.chi / p.psi) + log_bessel_k(p.lambda + k, omega) -
                  log_bessel_k(p.lambda, omega));
}

double gig_pdf(const GigParams& p, double x) {
  validate(p);
  if (!(x > 0.0)) return 0.0;
  if (p.psi == 0.0) {
    const double shape = -p.lambda;
    const double scale = 0.5 * p.chi;
    return std::exp(shape * std::log(scale) - std::lgamma(shape) + (p.lambda - 1.0) * std::log(x) -
                    scale / x);
  }
  if (p.chi == 0.0) {
    const double rate = 0.5 * p.psi;
    return std::exp(p.lambda * std::log(rate) - std::lgamma(p.lambda) +
                    (p.lambda - 1.0) * std::log(x) - rate * x);
  }
  const double omega = std::sqrt(p.chi * p.psi);
  const double log_norm = 0.5 * p.lambda * std::log(p.psi / p.chi) - std::numbers::ln2 -
                          log_bessel_k(p.lambda, omega);
  return std::exp(log_norm + (p.lambda - 1.0) * std::log(x) - 0.5 * (p.chi / x + p.psi * x));
}

}  // namespace meanex
