#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meanex/gh.hpp"
#include "meanex/gig.hpp"
#include "meanex/rng.hpp"
#include "meanex/sample.hpp"

namespace meanex {

enum class Family {
  kGpd,
  kPareto,
  kExponential,
  kWeibull,
  kBurr,
  kGompertz,
  kGamma,
  kBeta,
  kLognormal,
  kNormal,
  kLaplace,
  kStudentT,
  kCauchy,
  kGh,
  kGig,
};

struct Support {
  double lower;
  double upper;
};

/// A parameterised member of one of the registered families.
///
/// Parameterisations (survival function S = 1 - F):
///   gpd(xi, beta)                S = (1 + xi x / beta)^(-1/xi), x >= 0
///   pareto(alpha, lambda)        S = (lambda / (lambda + x))^alpha, x >= 0
///   exponential(lambda)          S = exp(-lambda x)
///   weibull(beta, tau)           S = exp(-(x / beta)^tau)
///   burr(alpha, lambda, tau)     S = (lambda / (lambda + x^tau))^alpha
///   gompertz(alpha, lambda)      S = exp(-(alpha / lambda)(e^(lambda x) - 1))
///   gamma(alpha, beta)           shape alpha, rate beta
///   beta(lambda, beta)           Beta(lambda, beta) on [0, 1]
///   lognormal(mu, sigma), normal(mu, sigma)
///   laplace(mu, sigma, tau)      asymmetric Laplace, F(mu) = tau
///   student(nu, mu, sigma)       location-scale Student t
///   cauchy(mu, delta)
///   gh(lambda, alpha, beta, delta, mu)
///   gig(lambda, chi, psi)
class Distribution {
 public:
  /// Throws InputError when the parameters leave the family's domain.
  Distribution(Family family, std::vector<double> params);

  /// Parses `family(name=value,...)`. Parameters with defaults may be omitted.
  /// Errors name the offending token.
  [[nodiscard]] static Distribution parse(std::string_view text);

  [[nodiscard]] Family family() const { return family_; }
  [[nodiscard]] std::span<const double> params() const { return params_; }
  [[nodiscard]] double param(std::string_view name) const;
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] Support support() const;
  [[nodiscard]] double pdf(double x) const;
  [[nodiscard]] double cdf(double x) const;
  /// 1 - cdf, evaluated directly in the upper tail.
  [[nodiscard]] double survival(double x) const;
  [[nodiscard]] double quantile(double p) const;

  [[nodiscard]] double draw(Rng& rng) const;
  [[nodiscard]] Sample sample(Rng& rng, std::size_t n) const;

  [[nodiscard]] bool has_finite_mean() const;
  /// NumericError when the mean is infinite or undefined.
  [[nodiscard]] double mean() const;
  [[nodiscard]] double mean_abs() const;
  /// Characteristic length used to scale quadrature substitutions.
  [[nodiscard]] double scale() const;

  /// Mean excess function in closed form, for the families that have one
  /// (gpd, exponential, pareto).
  [[nodiscard]] std::optional<double> closed_form_mef(double u) const;

  /// Families whose cdf comes from integrating the density (gh, gig).
  [[nodiscard]] bool density_based() const { return family_ == Family::kGh || family_ == Family::kGig; }
  /// Point around which density integrals are split.
  [[nodiscard]] double pivot() const;

  [[nodiscard]] GhParams gh_params() const;
  [[nodiscard]] GigParams gig_params() const;

 private:
  struct DensityTable;

  Family family_;
  std::vector<double> params_;
  // Cumulative integrals of the density on fixed panels (gh, gig only).
  std::shared_ptr<const DensityTable> table_;
};

[[nodiscard]] std::string_view family_name(Family f);

/// For each delta, the supremum over 512 equispaced v in [u0, u1] of
/// ((F(v) - F(v - delta)) / sqrt(delta))^2. Values decaying to 0 as delta
/// shrinks indicate the continuity condition behind the uniform bands holds.
[[nodiscard]] std::vector<double> fdelta_check(const std::function<double(double)>& cdf, double u0,
                                               double u1, std::span<const double> deltas);
[[nodiscard]] std::vector<double> fdelta_check(const Distribution& dist, double u0, double u1,
                                               std::span<const double> deltas);

}  // namespace meanex
