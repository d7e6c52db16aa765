#include "meanex/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "meanex/bessel.hpp"
#include "meanex/error.hpp"

namespace meanex {
namespace {

double gamma_of(const GhParams& p) { return std::sqrt(std::max(0.0, p.alpha * p.alpha - p.beta * p.beta)); }

bool domain_ok(const GhParams& p) {
  if (!(std::isfinite(p.lambda) && std::isfinite(p.alpha) && std::isfinite(p.beta) &&
        std::isfinite(p.delta) && std::isfinite(p.mu))) {
    return false;
  }
  if (p.alpha < 0.0 || p.delta < 0.0) return false;
  const double ab = std::abs(p.beta);
  if (p.lambda < 0.0) return p.delta > 0.0 && ab <= p.alpha;
  if (p.lambda == 0.0) return p.delta > 0.0 && ab < p.alpha;
  return ab < p.alpha;
}

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

}  // namespace

std::string_view to_string(GhCase c) {
  switch (c) {
    case GhCase::kInterior: return "interior";
    case GhCase::kHyperbolic: return "hyperbolic";
    case GhCase::kNig: return "nig";
    case GhCase::kVarianceGamma: return "variance-gamma";
    case GhCase::kSkewStudent: return "skew-student";
    case GhCase::kStudent: return "student";
    case GhCase::kCauchy: return "cauchy";
    case GhCase::kSkewLaplace: return "skew-laplace";
    case GhCase::kGaussianLimit: return "gaussian-limit";
    case GhCase::kInvalid: return "invalid";
  }
  return "invalid";
}

GhCase gh_validate(const GhParams& p) {
  if (!domain_ok(p)) return GhCase::kInvalid;
  const double zeta = p.delta * gamma_of(p);
  if (p.lambda < 0.0) {
    if (std::max(p.alpha, std::abs(p.beta)) * p.delta < 1e-6) {
      return p.lambda == -0.5 ? GhCase::kCauchy : GhCase::kStudent;
    }
    if (zeta < kSmallZeta) return GhCase::kSkewStudent;
  }
  if (p.lambda > 0.0 && zeta < kSmallZeta) {
    return p.lambda == 1.0 ? GhCase::kSkewLaplace : GhCase::kVarianceGamma;
  }
  if (zeta > kLargeZeta) return GhCase::kGaussianLimit;
  if (p.lambda == 1.0) return GhCase::kHyperbolic;
  if (p.lambda == -0.5) return GhCase::kNig;
  return GhCase::kInterior;
}

double gh_norming(const GhParams& p) {
  if (!domain_ok(p)) throw InputError("gh: parameters outside the domain");
  const double g = gamma_of(p);
  if (!(p.alpha > std::abs(p.beta)) || !(p.delta > 0.0) || g == 0.0) {
    throw NumericError("use limiting form: norming constant needs alpha > |beta| and delta > 0");
  }
  const double log_a = p.lambda * std::log(g) - kLogSqrt2Pi - (p.lambda - 0.5) * std::log(p.alpha) -
                       p.lambda * std::log(p.delta) - log_bessel_k(p.lambda, p.delta * g);
  return std::exp(log_a);
}

GhDensity::GhDensity(const GhParams& p) : p_(p), case_(gh_validate(p)) {
  if (case_ == GhCase::kInvalid) throw InputError("gh: parameters outside the domain");
  const double g = gamma_of(p);
  const double lambda = p.lambda;
  if (case_ == GhCase::kGaussianLimit) {
    form_ = Form::kGaussian;
    gauss_mean_ = p.mu + p.beta * p.delta / g;
    gauss_sd_ = std::sqrt(p.delta * p.alpha * p.alpha / (g * g * g));
  } else if (p.delta == 0.0) {
    // lambda > 0 is guaranteed by the domain check.
    form_ = Form::kVarianceGamma;
    log_norm_ = 2.0 * lambda * std::log(g) - 0.5 * std::log(std::numbers::pi) - std::lgamma(lambda) -
                (lambda - 0.5) * std::log(2.0 * p.alpha);
  } else if (p.alpha == 0.0) {
    form_ = Form::kStudent;
    log_norm_ = std::lgamma(0.5 - lambda) - 0.5 * std::log(std::numbers::pi) - std::log(p.delta) -
                std::lgamma(-lambda);
  } else if (g == 0.0) {
    // alpha = |beta| > 0, lambda < 0: limit of gamma^lambda / K_lambda(delta gamma).
    form_ = Form::kRaw;
    log_norm_ = (lambda + 1.0) * std::numbers::ln2 - kLogSqrt2Pi - (lambda - 0.5) * std::log(p.alpha) -
                2.0 * lambda * std::log(p.delta) - std::lgamma(-lambda);
  } else {
    form_ = Form::kRaw;
    log_norm_ = std::log(gh_norming(p));
  }
}

double GhDensity::log_pdf(double x) const {
  const double y = x - p_.mu;
  switch (form_) {
    case Form::kGaussian: {
      const double z = (x - gauss_mean_) / gauss_sd_;
      return -0.5 * z * z - std::log(gauss_sd_) - kLogSqrt2Pi;
    }
    case Form::kStudent:
      return log_norm_ + (p_.lambda - 0.5) * std::log1p((y / p_.delta) * (y / p_.delta));
    case Form::kVarianceGamma: {
      const double ay = std::abs(y);
      const double nu = p_.lambda - 0.5;
      if (ay == 0.0) {
        if (nu <= 0.0) return std::numeric_limits<double>::infinity();
        // |y|^nu K_nu(alpha |y|) -> Gamma(nu) 2^(nu-1) alpha^-nu.
        return log_norm_ + std::lgamma(nu) + (nu - 1.0) * std::numbers::ln2 - nu * std::log(p_.alpha);
      }
      return log_norm_ + nu * std::log(ay) + log_bessel_k(nu, p_.alpha * ay) + p_.beta * y;
    }
    case Form::kRaw: {
      const double q = p_.delta * p_.delta + y * y;
      return log_norm_ + 0.5 * (p_.lambda - 0.5) * std::log(q) + p_.beta * y +
             log_bessel_k(p_.lambda - 0.5, p_.alpha * std::sqrt(q));
    }
  }
  return -std::numeric_limits<double>::infinity();
}

double GhDensity::operator()(double x) const { return std::exp(log_pdf(x)); }

double gh_pdf(const GhParams& p, double x) { return GhDensity(p)(x); }

GigParams gh_mixing(const GhParams& p) {
  return {p.lambda, p.delta * p.delta, std::max(0.0, p.alpha * p.alpha - p.beta * p.beta)};
}

double gh_draw(const GhParams& p, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  if (gh_validate(p) == GhCase::kGaussianLimit) {
    const double g = gamma_of(p);
    return p.mu + p.beta * p.delta / g + std::sqrt(p.delta * p.alpha * p.alpha / (g * g * g)) * normal(rng);
  }
  const double w = gig_draw(gh_mixing(p), rng);
  return p.mu + p.beta * w + std::sqrt(w) * normal(rng);
}

Sample gh_sample(const GhParams& p, Rng& rng, std::size_t n) {
  if (gh_validate(p) == GhCase::kInvalid) throw InputError("gh: parameters outside the domain");
  if (n == 0) throw InputError("gh_sample: n must be positive");
  std::vector<double> out(n);
  for (auto& v : out) v = gh_draw(p, rng);
  return Sample(std::move(out));
}

double gh_mean(const GhParams& p) {
  const GhCase c = gh_validate(p);
  if (c == GhCase::kInvalid) throw InputError("gh: parameters outside the domain");
  if (c == GhCase::kGaussianLimit) return p.mu + p.beta * p.delta / gamma_of(p);
  const GigParams w = gh_mixing(p);
  if (p.beta == 0.0) {
    (void)gig_moment(w, 0.5);
    return p.mu;
  }
  return p.mu + p.beta * gig_moment(w, 1.0);
}

double gh_variance(const GhParams& p) {
  const GhCase c = gh_validate(p);
  if (c == GhCase::kInvalid) throw InputError("gh: parameters outside the domain");
  const double g = gamma_of(p);
  if (c == GhCase::kGaussianLimit) return p.delta * p.alpha * p.alpha / (g * g * g);
  const GigParams w = gh_mixing(p);
  const double m1 = gig_moment(w, 1.0);
  if (p.beta == 0.0) return m1;
  const double m2 = gig_moment(w, 2.0);
  return m1 + p.beta * p.beta * (m2 - m1 * m1);
}

}  // namespace meanex
