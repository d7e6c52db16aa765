#pragma once

#include <cstddef>
#include <vector>

#include "meanex/rng.hpp"
#include "meanex/sample.hpp"

namespace meanex {

/// Generalized inverse Gaussian law with density proportional to
/// x^(lambda-1) exp(-(chi/x + psi x)/2) on x > 0.
struct GigParams {
  double lambda = 1.0;
  double chi = 1.0;
  double psi = 1.0;
};

/// Throws InputError unless (chi > 0, psi >= 0, lambda < 0),
/// (chi > 0, psi > 0, lambda == 0) or (chi >= 0, psi > 0, lambda > 0).
void validate(const GigParams& p);

/// One GIG draw. Uses the ratio-of-uniforms family of Hoermann and Leydold
/// (mode-shifted ROU for large |lambda| or chi*psi, plain ROU and the
/// non-T-concave rejection scheme otherwise) and the gamma / inverse gamma
/// laws on the chi = 0 and psi = 0 boundaries.
[[nodiscard]] double gig_draw(const GigParams& p, Rng& rng);

/// n independent draws.
[[nodiscard]] Sample gig_sample(const GigParams& p, Rng& rng, std::size_t n);

/// E[W^k] = (chi/psi)^(k/2) K_{lambda+k}(omega) / K_lambda(omega), omega = sqrt(chi psi),
/// with the gamma / inverse-gamma forms on the boundaries. Throws NumericError
/// when the moment is infinite.
[[nodiscard]] double gig_moment(const GigParams& p, double k);

/// Density at x; 0 for x <= 0.
[[nodiscard]] double gig_pdf(const GigParams& p, double x);

}  // namespace meanex
