#include "meanex/sample.hpp"

#include <algorithm>
#include <cmath>

#include "meanex/error.hpp"

namespace meanex {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("sample is empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("sample contains a non-finite value");
  }
  std::sort(values_.begin(), values_.end());
}

double Sample::mean() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum / static_cast<double>(values_.size());
}

double Sample::mean_abs() const {
  double sum = 0.0;
  for (double v : values_) sum += std::abs(v);
  return sum / static_cast<double>(values_.size());
}

std::size_t Sample::first_above(double u) const {
  return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), u) -
                                  values_.begin());
}

std::size_t Sample::count_above(double u) const { return values_.size() - first_above(u); }

double Sample::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("quantile level must lie in [0, 1]");
  const double h = p * static_cast<double>(values_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values_.size() - 1);
  return values_[lo] + (h - static_cast<double>(lo)) * (values_[hi] - values_[lo]);
}

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw InputError("grid is empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) throw InputError("grid contains a non-finite point");
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw InputError("grid points must be strictly increasing");
    }
  }
}

Grid Grid::linspace(double lo, double hi, std::size_t m) {
  if (m == 0) throw InputError("grid needs at least one point");
  if (m == 1) return Grid({lo});
  if (!(hi > lo)) throw InputError("linspace needs lo < hi");
  std::vector<double> pts(m);
  const double step = (hi - lo) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) pts[i] = lo + step * static_cast<double>(i);
  pts.back() = hi;
  return Grid(std::move(pts));
}

Grid default_grid(const Sample& sample, const GridPolicy& policy) {
  if (sample.min() == sample.max()) throw NumericError("degenerate sample");
  if (policy.kind == GridPolicy::Kind::kOrderStatistics) {
    std::vector<double> pts;
    const auto values = sample.values();
    for (double v : values) {
      if (v == sample.max()) break;
      if (pts.empty() || pts.back() != v) pts.push_back(v);
    }
    return Grid(std::move(pts));
  }
  const double hi = sample.quantile(policy.upper_quantile);
  if (policy.points > 1 && !(hi > sample.min())) throw NumericError("degenerate sample");
  return Grid::linspace(sample.min(), hi, policy.points);
}

}  // namespace meanex
