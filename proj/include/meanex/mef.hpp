#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meanex/distribution.hpp"
#include "meanex/sample.hpp"

namespace meanex {

/// What the empirical mef reports at thresholds with no exceedance.
enum class EmptyPolicy {
  kZero,       // 0, following e(u) = 0 beyond the sample maximum
  kUndefined,  // no value
};

/// Mean excess values on a threshold grid. A value is nullopt where it is
/// undefined (no exceedances under EmptyPolicy::kUndefined).
struct MefCurve {
  Grid grid;
  std::vector<std::optional<double>> values;
  std::string meta;

  /// Throws InputError when the lengths differ or a value is non-finite.
  MefCurve(Grid g, std::vector<std::optional<double>> v, std::string m = {});

  [[nodiscard]] std::size_t size() const { return values.size(); }
};

/// e_n(u) = sum (X_i - u) 1[X_i > u] / sum 1[X_i > u]; 0 when u >= max.
[[nodiscard]] double empirical_mef(const Sample& sample, double u);

/// Pointwise empirical_mef on a grid, O(n + m log n) through suffix sums.
[[nodiscard]] MefCurve empirical_mef_curve(const Sample& sample, const Grid& grid,
                                           EmptyPolicy policy = EmptyPolicy::kZero);

/// e(u) = int_u^inf S(t) dt / S(u), and 0 where S(u) = 0. Closed forms for
/// gpd, exponential and pareto; survival quadrature otherwise (density
/// quadrature for gh and gig). Throws NumericError when the mean is
/// infinite or the quadrature fails.
[[nodiscard]] double theoretical_mef(const Distribution& dist, double u);
[[nodiscard]] MefCurve theoretical_mef_curve(const Distribution& dist, const Grid& grid);

/// max_i |a_i - b_i| over points where both are defined (0 if none).
/// Throws InputError when the grids differ.
[[nodiscard]] double sup_deviation(const MefCurve& a, const MefCurve& b);

}  // namespace meanex
