#pragma once

#include <cstddef>
#include <functional>

namespace meanex {

struct QuadratureOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-10;
  std::size_t max_evaluations = 1'000'000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration over [a, b].
/// Throws NumericError when the evaluation budget runs out before the
/// tolerance is met, or when the integrand returns a non-finite value.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Integral over [a, +inf) via x = a + scale * t / (1 - t).
QuadratureResult integrate_upper(const Integrand& f, double a, double scale,
                                 const QuadratureOptions& opts = {});

/// Integral over (-inf, b] via x = b - scale * t / (1 - t).
QuadratureResult integrate_lower(const Integrand& f, double b, double scale,
                                 const QuadratureOptions& opts = {});

}  // namespace meanex
