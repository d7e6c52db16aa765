#include "meanex/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "meanex/error.hpp"

namespace meanex {
namespace {

// Kronrod abscissae on [0, 1]; odd indices are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw NumericError("quadrature: integrand is not finite");
  return y;
}

Segment gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double sum = checked(f, center - dx) + checked(f, center + dx);
    kronrod += kKronrod[j] * sum;
    if (j % 2 == 1) gauss += kGauss[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts) {
  if (a == b) return {};
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw InputError("quadrature: finite limits required");
  }
  if (a > b) {
    auto r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  constexpr std::size_t kEvalsPerSegment = 15;
  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod(f, a, b));
  std::size_t evaluations = kEvalsPerSegment;
  double value = heap.top().value;
  double error = heap.top().error;
  // Segments too narrow to split contribute their error permanently.
  double frozen_error = 0.0;

  while (error + frozen_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
    if (heap.empty()) break;
    if (evaluations + 2 * kEvalsPerSegment > opts.max_evaluations) {
      throw NumericError("quadrature did not converge within the evaluation budget");
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a < 64 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
      frozen_error += worst.error;
      error -= worst.error;
      continue;
    }
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    evaluations += 2 * kEvalsPerSegment;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  if (error + frozen_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value)) &&
      frozen_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
    throw NumericError("quadrature: tolerance unreachable at machine resolution");
  }
  // Resum to shed drift accumulated by the incremental updates.
  double total = 0.0;
  double total_err = frozen_error;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  return {total, total_err, evaluations};
}

QuadratureResult integrate_upper(const Integrand& f, double a, double scale,
                                 const QuadratureOptions& opts) {
  if (!(scale > 0.0)) throw InputError("quadrature: scale must be positive");
  auto g = [&](double t) {
    const double s = 1.0 - t;
    const double y = f(a + scale * t / s);
    return y == 0.0 ? 0.0 : y * scale / (s * s);
  };
  return integrate(g, 0.0, 1.0, opts);
}

QuadratureResult integrate_lower(const Integrand& f, double b, double scale,
                                 const QuadratureOptions& opts) {
  if (!(scale > 0.0)) throw InputError("quadrature: scale must be positive");
  auto g = [&](double t) {
    const double s = 1.0 - t;
    const double y = f(b - scale * t / s);
    return y == 0.0 ? 0.0 : y * scale / (s * s);
  };
  return integrate(g, 0.0, 1.0, opts);
}

}  // namespace meanex
