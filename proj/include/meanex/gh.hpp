#pragma once

#include <cstddef>
#include <string_view>

#include "meanex/gig.hpp"
#include "meanex/rng.hpp"
#include "meanex/sample.hpp"

namespace meanex {

/// Generalized hyperbolic parameters: Bessel order lambda, shape alpha,
/// skewness beta, scale delta, location mu.
struct GhParams {
  double lambda = 1.0;
  double alpha = 1.0;
  double beta = 0.0;
  double delta = 1.0;
  double mu = 0.0;
};

enum class GhCase {
  kInterior,
  kHyperbolic,
  kNig,
  kVarianceGamma,
  kSkewStudent,
  kStudent,
  kCauchy,
  kSkewLaplace,
  kGaussianLimit,
  kInvalid,
};

[[nodiscard]] std::string_view to_string(GhCase c);

/// Classifies a parameter set. Limiting cases are recognised from
/// zeta = delta * sqrt(alpha^2 - beta^2): below kSmallZeta the law is read as
/// its delta -> 0 (lambda > 0) or alpha -> |beta| (lambda < 0) limit, above
/// kLargeZeta as the Gaussian limit. Student / Cauchy need alpha and beta
/// negligible on the delta scale.
[[nodiscard]] GhCase gh_validate(const GhParams& p);

inline constexpr double kSmallZeta = 1e-2;
inline constexpr double kLargeZeta = 1e8;

/// Norming constant a(lambda, alpha, beta, delta). Defined for alpha > |beta|
/// and delta > 0; boundary sets throw NumericError("use limiting form").
[[nodiscard]] double gh_norming(const GhParams& p);

/// Density evaluator with the norming constant computed once. Evaluates the
/// raw GH formula in log space whenever it is defined; the delta = 0
/// (variance gamma, skew Laplace) and alpha = |beta| (skew Student, Student,
/// Cauchy) boundaries use their closed-form limits, and the Gaussian limit
/// uses N(mu + beta delta / gamma, delta alpha^2 / gamma^3).
class GhDensity {
 public:
  /// Throws InputError for invalid parameters.
  explicit GhDensity(const GhParams& p);

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] double log_pdf(double x) const;
  [[nodiscard]] const GhParams& params() const { return p_; }
  [[nodiscard]] GhCase classification() const { return case_; }

 private:
  enum class Form { kRaw, kVarianceGamma, kStudent, kGaussian };

  GhParams p_;
  GhCase case_;
  Form form_;
  double log_norm_ = 0.0;
  double gauss_mean_ = 0.0;
  double gauss_sd_ = 0.0;
};

[[nodiscard]] double gh_pdf(const GhParams& p, double x);

/// Mixing law of the normal mean-variance representation:
/// X = mu + beta W + sqrt(W) Z with W ~ GIG(lambda, delta^2, alpha^2 - beta^2).
[[nodiscard]] GigParams gh_mixing(const GhParams& p);

[[nodiscard]] double gh_draw(const GhParams& p, Rng& rng);
[[nodiscard]] Sample gh_sample(const GhParams& p, Rng& rng, std::size_t n);

/// Mean and variance; NumericError when infinite.
[[nodiscard]] double gh_mean(const GhParams& p);
[[nodiscard]] double gh_variance(const GhParams& p);

}  // namespace meanex
