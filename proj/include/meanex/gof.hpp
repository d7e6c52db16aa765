#pragma once

#include <span>
#include <string_view>

#include "meanex/mef.hpp"

namespace meanex {

/// Generalized Pareto parameters: shape xi < 1 (finite mean), scale beta > 0.
struct GpdParams {
  double xi = 0.0;
  double beta = 1.0;
};

/// Throws InputError unless xi < 1 and beta > 0.
void validate(const GpdParams& p);

struct OlsFit {
  double a_hat = 0.0;  // slope
  double b_hat = 0.0;  // intercept
  double r2 = 0.0;
  double u_bar = 0.0;
  double y_bar = 0.0;
  std::size_t n = 0;
};

/// Least squares line y = a u + b. r2 is 1 when the fit is exact.
/// Throws InputError with fewer than 2 points or mismatched lengths,
/// NumericError("singular design") when all u coincide.
[[nodiscard]] OlsFit ols_fit(std::span<const double> u, std::span<const double> y);

/// xi = a / (a + 1), beta = b / (a + 1). NumericError("degenerate slope")
/// for a = -1, NumericError("invalid scale") when beta <= 0.
[[nodiscard]] GpdParams gpd_from_ols(const OlsFit& fit);

/// e(u) = beta / (1 - xi) + xi u / (1 - xi); 0 at or beyond the right
/// endpoint -beta/xi when xi < 0.
[[nodiscard]] double gpd_mef(const GpdParams& p, double u);

/// Fraction of the grid (by grid quantile) used for fitting.
struct FitWindow {
  double lower = 0.10;
  double upper = 0.90;
};

struct GpdFit {
  OlsFit ols;
  GpdParams params;
};

/// OLS on the defined curve points whose thresholds fall inside the window,
/// then the GPD inversion.
[[nodiscard]] GpdFit fit_gpd(const MefCurve& curve, const FitWindow& window = {});

enum class TailClass { kHeavy, kLight, kMedium };

[[nodiscard]] std::string_view to_string(TailClass c);

/// Slope of the windowed OLS line against tau * mean|e| / (grid span):
/// above is heavy, below the negative is light, otherwise medium. The
/// threshold is relative, so the result is invariant under rescaling both
/// axes. Uses all defined points when the window keeps fewer than 3.
/// Throws InputError with fewer than 3 defined points.
[[nodiscard]] TailClass classify_tail(const MefCurve& curve, double tau = 0.05, const FitWindow& window = {});

}  // namespace meanex
