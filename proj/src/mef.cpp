#include "meanex/mef.hpp"

#include <algorithm>
#include <cmath>

#include "meanex/error.hpp"
#include "meanex/quadrature.hpp"

namespace meanex {

MefCurve::MefCurve(Grid g, std::vector<std::optional<double>> v, std::string m)
    : grid(std::move(g)), values(std::move(v)), meta(std::move(m)) {
  if (values.size() != grid.size()) throw InputError("curve values and grid differ in length");
  for (const auto& x : values) {
    if (x && !std::isfinite(*x)) throw InputError("curve value is not finite");
  }
}

double empirical_mef(const Sample& sample, double u) {
  const auto xs = sample.values();
  const std::size_t k = sample.first_above(u);
  if (k == xs.size()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = k; i < xs.size(); ++i) sum += xs[i] - u;
  return sum / static_cast<double>(xs.size() - k);
}

MefCurve empirical_mef_curve(const Sample& sample, const Grid& grid, EmptyPolicy policy) {
  const auto xs = sample.values();
  const std::size_t n = xs.size();
  // Neumaier-compensated suffix sums: suffix[k] = sum_{i >= k} x_i.
  std::vector<double> suffix(n + 1, 0.0);
  double s = 0.0;
  double c = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double t = s + xs[i];
    if (std::abs(s) >= std::abs(xs[i])) {
      c += (s - t) + xs[i];
    } else {
      c += (xs[i] - t) + s;
    }
    s = t;
    suffix[i] = s + c;
  }
  std::vector<std::optional<double>> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double u = grid[j];
    const std::size_t k = sample.first_above(u);
    if (k == n) {
      if (policy == EmptyPolicy::kZero) values[j] = 0.0;
      continue;
    }
    const auto count = static_cast<double>(n - k);
    values[j] = suffix[k] / count - u;
  }
  std::string meta = "emef n=" + std::to_string(n) + " grid=[" + std::to_string(grid.front()) + "," +
                     std::to_string(grid.back()) + "]";
  return MefCurve(grid, std::move(values), std::move(meta));
}

double theoretical_mef(const Distribution& dist, double u) {
  const Support sup = dist.support();
  if (u >= sup.upper) return 0.0;
  if (!dist.has_finite_mean()) throw NumericError(dist.to_string() + ": mean excess needs a finite mean");
  if (auto closed = dist.closed_form_mef(u)) return *closed;
  if (u < sup.lower) return dist.mean() - u;

  const double w = dist.scale();
  if (dist.density_based()) {
    const QuadratureOptions opts{1e-15, 1e-11, 1'000'000};
    const Integrand f = [&dist](double x) { return dist.pdf(x); };
    const Integrand g = [&dist, u](double x) { return (x - u) * dist.pdf(x); };
    const double mass = integrate_upper(f, u, w, opts).value;
    if (!(mass > 0.0)) return 0.0;
    return integrate_upper(g, u, w, opts).value / mass;
  }

  const double su = dist.survival(u);
  if (!(su > 0.0)) return 0.0;
  // Truncated where S falls below 1e-12 of S(u).
  const double cutoff = 1e-12 * su;
  const Integrand surv = [&dist, cutoff](double t) {
    const double s = dist.survival(t);
    return s < cutoff ? 0.0 : s;
  };
  const QuadratureOptions opts{1e-9 * su, 1e-11, 1'000'000};
  double integral = 0.0;
  if (std::isfinite(sup.upper)) {
    integral = integrate(surv, u, sup.upper, opts).value;
  } else {
    integral = integrate_upper(surv, u, w, opts).value;
  }
  return integral / su;
}

MefCurve theoretical_mef_curve(const Distribution& dist, const Grid& grid) {
  std::vector<std::optional<double>> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) values[j] = theoretical_mef(dist, grid[j]);
  return MefCurve(grid, std::move(values), "mef " + dist.to_string());
}

double sup_deviation(const MefCurve& a, const MefCurve& b) {
  if (!(a.grid == b.grid)) throw InputError("sup_deviation needs identical grids");
  double sup = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.values[i] && b.values[i]) sup = std::max(sup, std::abs(*a.values[i] - *b.values[i]));
  }
  return sup;
}

}  // namespace meanex
