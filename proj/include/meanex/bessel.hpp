#pragma once

namespace meanex {

/// Modified Bessel function of the third kind, K_nu(x), for x > 0.
///
/// Half-integer orders use the terminating closed form. Every other order is
/// evaluated from the integral definition
///   K_nu(x) = 1/2 int_0^inf y^(nu-1) exp(-x (y + 1/y) / 2) dy,
/// rewritten with y = e^t as int_0^inf exp(-x cosh t) cosh(nu t) dt, whose
/// trapezoidal sums converge geometrically. Accurate to about 1e-13 relative.
///
/// Throws InputError for x <= 0 and NumericError("range") when the value
/// overflows a double.
[[nodiscard]] double bessel_k(double nu, double x);

/// log K_nu(x); finite wherever K_nu(x) is representable in log space, which
/// covers arguments where bessel_k itself underflows or overflows.
[[nodiscard]] double log_bessel_k(double nu, double x);

namespace detail {
/// The trapezoidal evaluation of the integral definition, bypassing the
/// half-integer closed forms. Exposed for cross-checking.
[[nodiscard]] double log_bessel_k_integral(double nu, double x);
/// Closed form for nu = n + 1/2, n = 0..kMaxHalfIntegerOrder.
[[nodiscard]] double log_bessel_k_half_integer(int n, double x);
inline constexpr int kMaxHalfIntegerOrder = 30;
}  // namespace detail

}  // namespace meanex
