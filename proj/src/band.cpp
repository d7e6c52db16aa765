#include "meanex/band.hpp"

#include <algorithm>
#include <cmath>

#include "meanex/error.hpp"

namespace meanex {

BandConstants band_constants(double u0, double u1, double A, double A1) {
  if (!(std::isfinite(u0) && std::isfinite(u1) && u0 < u1)) throw InputError("band interval needs u0 < u1");
  if (!(A > 0.0 && A1 > 0.0 && std::isfinite(A) && std::isfinite(A1))) {
    throw InputError("band constants A and A1 must be positive");
  }
  BandConstants c;
  c.A = A;
  c.A1 = A1;
  c.u0 = u0;
  c.u1 = u1;
  c.M1 = std::max({2.0, std::abs(u0), std::abs(u1)});
  c.D1 = 2.0 * A * A1 * std::sqrt(std::log(2.0)) + A1;
  c.D2 = A * A1 * c.M1 * std::sqrt(std::log(c.M1)) + A1;
  return c;
}

double band_en(const BandConstants& c, double survival_u1, double mean_abs, std::size_t n) {
  if (n == 0) throw InputError("band needs n >= 1");
  if (!(survival_u1 > 0.0 && survival_u1 <= 1.0)) throw InputError("survival at u1 must lie in (0, 1]");
  if (!(mean_abs >= 0.0)) throw InputError("E|X| must be nonnegative");
  const double denom = survival_u1 - c.D1 / std::sqrt(static_cast<double>(n));
  if (!(denom > 0.0)) throw NumericError("band undefined: n too small for interval");
  return (c.D2 + c.D1 * mean_abs / survival_u1) / denom;
}

double Band::half_width() const { return en / std::sqrt(static_cast<double>(n)); }

Band consistency_band(const Sample& sample, const Grid& grid, const BandConstants& c, const BandMode& mode) {
  if (grid.front() < c.u0 || grid.back() > c.u1) throw InputError("band grid must lie inside [u0, u1]");
  const std::size_t n = sample.size();
  double surv = mode.survival_u1;
  double mabs = mode.mean_abs;
  if (mode.kind == BandMode::Kind::kPlugin) {
    surv = static_cast<double>(sample.count_above(c.u1)) / static_cast<double>(n);
    mabs = sample.mean_abs();
    if (surv == 0.0) throw NumericError("band undefined: n too small for interval");
  }
  const double en = band_en(c, surv, mabs, n);
  const double hw = en / std::sqrt(static_cast<double>(n));

  MefCurve curve = empirical_mef_curve(sample, grid);
  std::vector<double> lower(grid.size());
  std::vector<double> upper(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = *curve.values[i];
    lower[i] = e - hw;
    upper[i] = e + hw;
  }
  return Band{std::move(curve), std::move(lower), std::move(upper), en, n, c, surv, mabs};
}

std::vector<double> h_u_values(const Sample& sample, double u) {
  const auto xs = sample.values();
  const std::size_t k = sample.first_above(u);
  if (k == xs.size()) throw NumericError("h_u undefined: no observation above u");
  const double n = static_cast<double>(xs.size());
  const double pg = static_cast<double>(xs.size() - k) / n;
  double sum = 0.0;
  for (std::size_t i = k; i < xs.size(); ++i) sum += xs[i];
  const double pf = sum / n;
  // On exceedances h = (t - Pf/Pg) / Pg; elsewhere both terms vanish.
  const double centre = pf / pg;
  std::vector<double> h(xs.size(), 0.0);
  for (std::size_t i = k; i < xs.size(); ++i) h[i] = (xs[i] - centre) / pg;
  return h;
}

double asymptotic_variance(const Sample& sample, double u) {
  if (sample.count_above(u) < 2) throw NumericError("asymptotic variance needs two observations above u");
  const std::vector<double> h = h_u_values(sample, u);
  const double n = static_cast<double>(h.size());
  double mean = 0.0;
  for (double v : h) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : h) ss += (v - mean) * (v - mean);
  return ss / n;
}

}  // namespace meanex
