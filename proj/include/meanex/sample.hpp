#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace meanex {

/// A finite, non-empty set of observations, stored sorted ascending.
class Sample {
 public:
  /// Throws InputError when `values` is empty or holds a NaN or infinity.
  explicit Sample(std::vector<double> values);

  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double min() const { return values_.front(); }
  [[nodiscard]] double max() const { return values_.back(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

  [[nodiscard]] double mean() const;
  [[nodiscard]] double mean_abs() const;

  /// Number of observations strictly greater than u.
  [[nodiscard]] std::size_t count_above(double u) const;

  /// Index of the first observation strictly greater than u.
  [[nodiscard]] std::size_t first_above(double u) const;

  /// Type-7 (linear interpolation) quantile, p in [0, 1].
  [[nodiscard]] double quantile(double p) const;

 private:
  std::vector<double> values_;
};

/// Strictly increasing evaluation thresholds.
class Grid {
 public:
  /// Throws InputError when empty, non-finite or not strictly increasing.
  explicit Grid(std::vector<double> points);

  /// m equispaced points on [lo, hi]; m == 1 yields {lo}.
  [[nodiscard]] static Grid linspace(double lo, double hi, std::size_t m);

  [[nodiscard]] std::span<const double> points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] double front() const { return points_.front(); }
  [[nodiscard]] double back() const { return points_.back(); }
  [[nodiscard]] double operator[](std::size_t i) const { return points_[i]; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<double> points_;
};

struct GridPolicy {
  enum class Kind { kOrderStatistics, kLinspace };

  Kind kind = Kind::kLinspace;
  std::size_t points = 200;
  /// Upper trimming quantile for the linspace policy.
  double upper_quantile = 0.98;

  static GridPolicy order_statistics() { return {Kind::kOrderStatistics, 0, 1.0}; }
  static GridPolicy linspace(std::size_t m, double upper_quantile = 0.98) {
    return {Kind::kLinspace, m, upper_quantile};
  }
};

/// Order statistics: the distinct sample values without the maximum.
/// Linspace: `points` equispaced values on [min, quantile(upper_quantile)].
/// Throws NumericError("degenerate sample") when all values coincide.
[[nodiscard]] Grid default_grid(const Sample& sample, const GridPolicy& policy);

}  // namespace meanex
