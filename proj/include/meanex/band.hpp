#pragma once

#include <cstddef>
#include <vector>

#include "meanex/mef.hpp"
#include "meanex/sample.hpp"

namespace meanex {

/// Constants of the uniform consistency band on [u0, u1]. A and A1 are the
/// (unspecified) universal constants; both default to 1.
struct BandConstants {
  double A = 1.0;
  double A1 = 1.0;
  double u0 = 0.0;
  double u1 = 1.0;
  double M1 = 2.0;
  double D1 = 0.0;
  double D2 = 0.0;
};

/// M1 = max(2, |u0|, |u1|), D1 = 2 A A1 sqrt(log 2) + A1,
/// D2 = A A1 M1 sqrt(log M1) + A1. Throws InputError unless u0 < u1 and
/// A, A1 > 0.
[[nodiscard]] BandConstants band_constants(double u0, double u1, double A = 1.0, double A1 = 1.0);

/// Where S(u1) and E|X| come from.
struct BandMode {
  enum class Kind { kPlugin, kOracle };
  Kind kind = Kind::kPlugin;
  double survival_u1 = 0.0;
  double mean_abs = 0.0;

  static BandMode plugin() { return {}; }
  static BandMode oracle(double survival_u1, double mean_abs) { return {Kind::kOracle, survival_u1, mean_abs}; }
};

struct Band {
  MefCurve curve;
  std::vector<double> lower;
  std::vector<double> upper;
  double en = 0.0;
  std::size_t n = 0;
  BandConstants constants;
  double survival_u1 = 0.0;
  double mean_abs = 0.0;

  [[nodiscard]] double half_width() const;
};

/// E_n = (D2 + D1 E|X| / S(u1)) / (S(u1) - D1 / sqrt(n)).
/// Throws NumericError("band undefined: n too small for interval") when
/// S(u1) <= D1 / sqrt(n).
[[nodiscard]] double band_en(const BandConstants& c, double survival_u1, double mean_abs, std::size_t n);

/// e_n -/+ E_n / sqrt(n) on the grid, which must lie inside [u0, u1].
/// Plug-in mode estimates S(u1) by the exceedance fraction and E|X| by the
/// sample mean of |X_i|.
[[nodiscard]] Band consistency_band(const Sample& sample, const Grid& grid, const BandConstants& c,
                                    const BandMode& mode = BandMode::plugin());

/// Plug-in influence function h_u at every sample point:
/// h_u(t) = f_u(t) / P_n(g_u) - P_n(f_u) / P_n(g_u)^2 g_u(t),
/// f_u(t) = t 1[t > u], g_u(t) = 1[t > u]. Throws NumericError without
/// exceedances.
[[nodiscard]] std::vector<double> h_u_values(const Sample& sample, double u);

/// Mean of h_u^2 (divisor n): the pointwise asymptotic variance of
/// sqrt(n) (e_n(u) - e(u)). Throws NumericError with fewer than two
/// exceedances.
[[nodiscard]] double asymptotic_variance(const Sample& sample, double u);

}  // namespace meanex
