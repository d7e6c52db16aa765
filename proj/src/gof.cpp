#include "meanex/gof.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "meanex/error.hpp"

namespace meanex {
namespace {

struct Points {
  std::vector<double> u;
  std::vector<double> y;
};

Points defined_points(const MefCurve& curve) {
  Points p;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve.values[i]) {
      p.u.push_back(curve.grid[i]);
      p.y.push_back(*curve.values[i]);
    }
  }
  return p;
}

Points windowed(const Points& all, const FitWindow& w) {
  if (!(w.lower >= 0.0 && w.lower < w.upper && w.upper <= 1.0)) throw InputError("fit window must satisfy 0 <= lower < upper <= 1");
  if (all.u.empty()) return all;
  const Sample grid(all.u);
  const double lo = grid.quantile(w.lower);
  const double hi = grid.quantile(w.upper);
  Points out;
  for (std::size_t i = 0; i < all.u.size(); ++i) {
    if (all.u[i] >= lo && all.u[i] <= hi) {
      out.u.push_back(all.u[i]);
      out.y.push_back(all.y[i]);
    }
  }
  return out;
}

}  // namespace

void validate(const GpdParams& p) {
  if (!(std::isfinite(p.xi) && p.xi < 1.0)) throw InputError("gpd shape xi must be < 1");
  if (!(std::isfinite(p.beta) && p.beta > 0.0)) throw InputError("gpd scale beta must be positive");
}

OlsFit ols_fit(std::span<const double> u, std::span<const double> y) {
  if (u.size() != y.size()) throw InputError("ols_fit: u and y differ in length");
  if (u.size() < 2) throw InputError("ols_fit needs at least 2 points");
  const auto n = static_cast<double>(u.size());
  double su = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sy += y[i];
  }
  OlsFit fit;
  fit.n = u.size();
  fit.u_bar = su / n;
  fit.y_bar = sy / n;
  // Centred sums: algebraically equal to n sum(uy) - sum(u) sum(y) over
  // n sum(u^2) - (sum u)^2, without the cancellation.
  double suu = 0.0;
  double suy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double du = u[i] - fit.u_bar;
    const double dy = y[i] - fit.y_bar;
    suu += du * du;
    suy += du * dy;
    syy += dy * dy;
  }
  if (!(suu > 0.0)) throw NumericError("singular design");
  fit.a_hat = suy / suu;
  fit.b_hat = fit.y_bar - fit.a_hat * fit.u_bar;
  double sse = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = y[i] - (fit.a_hat * u[i] + fit.b_hat);
    sse += r * r;
  }
  if (syy > 0.0) {
    fit.r2 = std::clamp(1.0 - sse / syy, 0.0, 1.0);
  } else {
    fit.r2 = 1.0;
  }
  return fit;
}

GpdParams gpd_from_ols(const OlsFit& fit) {
  const double d = fit.a_hat + 1.0;
  if (d == 0.0) throw NumericError("degenerate slope");
  const GpdParams p{fit.a_hat / d, fit.b_hat / d};
  if (!(p.beta > 0.0)) throw NumericError("invalid scale");
  return p;
}

double gpd_mef(const GpdParams& p, double u) {
  validate(p);
  if (u < 0.0) throw InputError("gpd_mef needs u >= 0");
  if (p.xi < 0.0 && u >= -p.beta / p.xi) return 0.0;
  return (p.beta + p.xi * u) / (1.0 - p.xi);
}

GpdFit fit_gpd(const MefCurve& curve, const FitWindow& window) {
  const Points pts = windowed(defined_points(curve), window);
  GpdFit out;
  out.ols = ols_fit(pts.u, pts.y);
  out.params = gpd_from_ols(out.ols);
  return out;
}

std::string_view to_string(TailClass c) {
  switch (c) {
    case TailClass::kHeavy: return "heavy";
    case TailClass::kLight: return "light";
    case TailClass::kMedium: return "medium";
  }
  return "medium";
}

TailClass classify_tail(const MefCurve& curve, double tau, const FitWindow& window) {
  const Points all = defined_points(curve);
  if (all.u.size() < 3) throw InputError("classify_tail needs at least 3 defined points");
  Points pts = windowed(all, window);
  if (pts.u.size() < 3) pts = all;
  const OlsFit fit = ols_fit(pts.u, pts.y);
  double mean_abs = 0.0;
  for (double y : all.y) mean_abs += std::abs(y);
  mean_abs /= static_cast<double>(all.y.size());
  const double span = all.u.back() - all.u.front();
  const double threshold = tau * mean_abs / span;
  if (fit.a_hat > threshold) return TailClass::kHeavy;
  if (fit.a_hat < -threshold) return TailClass::kLight;
  return TailClass::kMedium;
}

}  // namespace meanex
