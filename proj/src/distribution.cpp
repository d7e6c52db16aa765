#include "meanex/distribution.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "meanex/error.hpp"
#include "meanex/quadrature.hpp"

namespace meanex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ParamSpec {
  std::string_view name;
  double fallback;  // NaN: required
};

struct FamilySpec {
  Family family;
  std::string_view name;
  std::vector<ParamSpec> params;
};

const std::vector<FamilySpec>& registry() {
  static const std::vector<FamilySpec> specs = {
      {Family::kGpd, "gpd", {{"xi", kNaN}, {"beta", 1.0}}},
      {Family::kPareto, "pareto", {{"alpha", kNaN}, {"lambda", 1.0}}},
      {Family::kExponential, "exponential", {{"lambda", 1.0}}},
      {Family::kWeibull, "weibull", {{"beta", 1.0}, {"tau", kNaN}}},
      {Family::kBurr, "burr", {{"alpha", kNaN}, {"lambda", 1.0}, {"tau", 1.0}}},
      {Family::kGompertz, "gompertz", {{"alpha", kNaN}, {"lambda", kNaN}}},
      {Family::kGamma, "gamma", {{"alpha", kNaN}, {"beta", 1.0}}},
      {Family::kBeta, "beta", {{"lambda", kNaN}, {"beta", kNaN}}},
      {Family::kLognormal, "lognormal", {{"mu", 0.0}, {"sigma", 1.0}}},
      {Family::kNormal, "normal", {{"mu", 0.0}, {"sigma", 1.0}}},
      {Family::kLaplace, "laplace", {{"mu", 0.0}, {"sigma", 1.0}, {"tau", 0.5}}},
      {Family::kStudentT, "student", {{"nu", kNaN}, {"mu", 0.0}, {"sigma", 1.0}}},
      {Family::kCauchy, "cauchy", {{"mu", 0.0}, {"delta", 1.0}}},
      {Family::kGh,
       "gh",
       {{"lambda", 1.0}, {"alpha", 1.0}, {"beta", 0.0}, {"delta", 1.0}, {"mu", 0.0}}},
      {Family::kGig, "gig", {{"lambda", 1.0}, {"chi", 1.0}, {"psi", 1.0}}},
  };
  return specs;
}

const FamilySpec& spec_of(Family f) {
  for (const auto& s : registry()) {
    if (s.family == f) return s;
  }
  throw InputError("unknown family");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token, std::string_view name) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw InputError("bad value '" + std::string(token) + "' for parameter '" + std::string(name) + "'");
  }
  return v;
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double std_normal_quantile(double p) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }

void require(bool ok, const Distribution& d, std::string_view what) {
  if (!ok) throw InputError(d.to_string() + ": " + std::string(what));
}

}  // namespace

std::string_view family_name(Family f) { return spec_of(f).name; }

// Cumulative integrals of the density between fixed nodes on either side of
// the pivot, so a cdf evaluation costs one short quadrature.
struct Distribution::DensityTable {
  std::function<double(double)> pdf;
  double pivot = 0.0;
  double lower_bound = -kInf;  // support lower end
  std::vector<double> up_nodes;    // ascending, up_nodes[0] = pivot
  std::vector<double> up_mass;     // mass above up_nodes[k]
  std::vector<double> down_nodes;  // descending, down_nodes[0] = pivot
  std::vector<double> down_mass;   // mass below down_nodes[k]
  double total = 1.0;

  static QuadratureOptions opts() { return {1e-15, 1e-11, 1'000'000}; }

  double upper_tail(double x) const {
    const auto it = std::upper_bound(up_nodes.begin(), up_nodes.end(), x);
    if (it == up_nodes.end()) {
      const double s = std::max(x - pivot, up_nodes.back() - pivot);
      return integrate_upper(pdf, x, s, opts()).value;
    }
    const auto k = static_cast<std::size_t>(it - up_nodes.begin());
    return up_mass[k] + integrate(pdf, x, up_nodes[k], opts()).value;
  }

  double lower_tail(double x) const {
    if (x <= lower_bound) return 0.0;
    const auto it = std::upper_bound(down_nodes.begin(), down_nodes.end(), x, std::greater<>());
    if (it == down_nodes.end()) {
      if (std::isfinite(lower_bound)) return integrate(pdf, lower_bound, x, opts()).value;
      const double s = std::max(pivot - x, pivot - down_nodes.back());
      return integrate_lower(pdf, x, s, opts()).value;
    }
    const auto k = static_cast<std::size_t>(it - down_nodes.begin());
    return down_mass[k] + integrate(pdf, down_nodes[k], x, opts()).value;
  }

  double cdf(double x) const {
    if (x <= pivot) return std::clamp(lower_tail(x) / total, 0.0, 1.0);
    return std::clamp(1.0 - upper_tail(x) / total, 0.0, 1.0);
  }

  double survival(double x) const {
    if (x >= pivot) return std::clamp(upper_tail(x) / total, 0.0, 1.0);
    return std::clamp(1.0 - lower_tail(x) / total, 0.0, 1.0);
  }

  static std::shared_ptr<const DensityTable> build(std::function<double(double)> f, double pivot,
                                                   double scale, double lower_bound) {
    auto t = std::make_shared<DensityTable>();
    t->pdf = std::move(f);
    t->pivot = pivot;
    t->lower_bound = lower_bound;
    // Offsets 0.25 s, 0.5 s, ..., 2 s, then growing by 1.5x up to ~1e6 s.
    std::vector<double> offsets;
    for (int k = 0; k <= 8; ++k) offsets.push_back(0.25 * scale * k);
    while (offsets.back() < 1e6 * scale) offsets.push_back(offsets.back() * 1.5);

    for (double o : offsets) t->up_nodes.push_back(pivot + o);
    t->up_mass.assign(t->up_nodes.size(), 0.0);
    const std::size_t ku = t->up_nodes.size() - 1;
    t->up_mass[ku] = integrate_upper(t->pdf, t->up_nodes[ku], t->up_nodes[ku] - pivot, opts()).value;
    for (std::size_t k = ku; k-- > 0;) {
      t->up_mass[k] = t->up_mass[k + 1] + integrate(t->pdf, t->up_nodes[k], t->up_nodes[k + 1], opts()).value;
    }

    if (std::isfinite(lower_bound)) {
      // Positive support: geometric nodes toward the lower bound.
      const double span = pivot - lower_bound;
      t->down_nodes.push_back(pivot);
      for (int k = 1; k <= 8; ++k) t->down_nodes.push_back(pivot - span * k / 16.0);
      double gap = span / 2.0;
      while (gap > span * 1e-12) {
        gap *= 0.5;
        t->down_nodes.push_back(lower_bound + gap);
      }
    } else {
      for (double o : offsets) t->down_nodes.push_back(pivot - o);
    }
    t->down_mass.assign(t->down_nodes.size(), 0.0);
    const std::size_t kd = t->down_nodes.size() - 1;
    t->down_mass[kd] = std::isfinite(lower_bound)
                           ? integrate(t->pdf, lower_bound, t->down_nodes[kd], opts()).value
                           : integrate_lower(t->pdf, t->down_nodes[kd], pivot - t->down_nodes[kd], opts()).value;
    for (std::size_t k = kd; k-- > 0;) {
      t->down_mass[k] =
          t->down_mass[k + 1] + integrate(t->pdf, t->down_nodes[k + 1], t->down_nodes[k], opts()).value;
    }
    t->total = t->up_mass[0] + t->down_mass[0];
    if (!(t->total > 0.0) || !std::isfinite(t->total)) throw NumericError("density does not integrate");
    return t;
  }
};

Distribution::Distribution(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
  const auto& spec = spec_of(family_);
  if (params_.size() != spec.params.size()) {
    throw InputError(std::string(spec.name) + ": expected " + std::to_string(spec.params.size()) + " parameters");
  }
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!std::isfinite(params_[i])) {
      throw InputError(std::string(spec.name) + ": parameter '" + std::string(spec.params[i].name) +
                       "' must be finite");
    }
  }
  const auto& p = params_;
  switch (family_) {
    case Family::kGpd: require(p[1] > 0.0, *this, "beta must be positive"); break;
    case Family::kPareto: require(p[0] > 0.0 && p[1] > 0.0, *this, "alpha and lambda must be positive"); break;
    case Family::kExponential: require(p[0] > 0.0, *this, "lambda must be positive"); break;
    case Family::kWeibull: require(p[0] > 0.0 && p[1] > 0.0, *this, "beta and tau must be positive"); break;
    case Family::kBurr:
      require(p[0] > 0.0 && p[1] > 0.0 && p[2] > 0.0, *this, "alpha, lambda and tau must be positive");
      break;
    case Family::kGompertz: require(p[0] > 0.0 && p[1] > 0.0, *this, "alpha and lambda must be positive"); break;
    case Family::kGamma: require(p[0] > 0.0 && p[1] > 0.0, *this, "alpha and beta must be positive"); break;
    case Family::kBeta: require(p[0] > 0.0 && p[1] > 0.0, *this, "lambda and beta must be positive"); break;
    case Family::kLognormal:
    case Family::kNormal: require(p[1] > 0.0, *this, "sigma must be positive"); break;
    case Family::kLaplace:
      require(p[1] > 0.0, *this, "sigma must be positive");
      require(p[2] > 0.0 && p[2] < 1.0, *this, "tau must lie in (0, 1)");
      break;
    case Family::kStudentT: require(p[0] > 0.0 && p[2] > 0.0, *this, "nu and sigma must be positive"); break;
    case Family::kCauchy: require(p[1] > 0.0, *this, "delta must be positive"); break;
    case Family::kGh: {
      const GhParams g = gh_params();
      require(gh_validate(g) != GhCase::kInvalid, *this, "parameters outside the GH domain");
      auto dens = std::make_shared<GhDensity>(g);
      table_ = DensityTable::build([dens](double x) { return (*dens)(x); }, pivot(), scale(), -kInf);
      break;
    }
    case Family::kGig: {
      const GigParams g = gig_params();
      validate(g);
      table_ = DensityTable::build([g](double x) { return gig_pdf(g, x); }, pivot(), scale(), 0.0);
      break;
    }
  }
}

Distribution Distribution::parse(std::string_view text) {
  const std::string_view whole = trim(text);
  const auto open = whole.find('(');
  const std::string_view name = trim(whole.substr(0, open));
  const FamilySpec* spec = nullptr;
  for (const auto& s : registry()) {
    if (s.name == name) spec = &s;
  }
  if (spec == nullptr) throw InputError("unknown distribution family '" + std::string(name) + "'");

  std::vector<double> values(spec->params.size(), kNaN);
  std::vector<bool> seen(spec->params.size(), false);
  if (open != std::string_view::npos) {
    if (whole.back() != ')') throw InputError("expected ')' at end of '" + std::string(whole) + "'");
    std::string_view body = whole.substr(open + 1, whole.size() - open - 2);
    while (!trim(body).empty()) {
      const auto comma = body.find(',');
      const std::string_view item = trim(body.substr(0, comma));
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw InputError("expected name=value, got '" + std::string(item) + "'");
      const std::string_view key = trim(item.substr(0, eq));
      std::size_t idx = spec->params.size();
      for (std::size_t i = 0; i < spec->params.size(); ++i) {
        if (spec->params[i].name == key) idx = i;
      }
      if (idx == spec->params.size()) {
        throw InputError("unknown parameter '" + std::string(key) + "' for " + std::string(spec->name));
      }
      if (seen[idx]) throw InputError("duplicate parameter '" + std::string(key) + "'");
      seen[idx] = true;
      values[idx] = parse_number(item.substr(eq + 1), key);
    }
  } else if (name != whole) {
    throw InputError("unexpected text '" + std::string(whole.substr(name.size())) + "'");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (seen[i]) continue;
    if (std::isnan(spec->params[i].fallback)) {
      throw InputError("missing parameter '" + std::string(spec->params[i].name) + "' for " +
                       std::string(spec->name));
    }
    values[i] = spec->params[i].fallback;
  }
  return Distribution(spec->family, std::move(values));
}

double Distribution::param(std::string_view name) const {
  const auto& spec = spec_of(family_);
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    if (spec.params[i].name == name) return params_[i];
  }
  throw InputError("no parameter '" + std::string(name) + "' in " + std::string(spec.name));
}

std::string Distribution::to_string() const {
  const auto& spec = spec_of(family_);
  std::ostringstream os;
  os.precision(12);
  os << spec.name << '(';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i > 0) os << ',';
    os << spec.params[i].name << '=' << params_[i];
  }
  os << ')';
  return os.str();
}

GhParams Distribution::gh_params() const {
  if (family_ != Family::kGh) throw InputError("not a gh distribution");
  return {params_[0], params_[1], params_[2], params_[3], params_[4]};
}

GigParams Distribution::gig_params() const {
  if (family_ != Family::kGig) throw InputError("not a gig distribution");
  return {params_[0], params_[1], params_[2]};
}

Support Distribution::support() const {
  const auto& p = params_;
  switch (family_) {
    case Family::kGpd: return {0.0, p[0] < 0.0 ? -p[1] / p[0] : kInf};
    case Family::kBeta: return {0.0, 1.0};
    case Family::kPareto:
    case Family::kExponential:
    case Family::kWeibull:
    case Family::kBurr:
    case Family::kGompertz:
    case Family::kGamma:
    case Family::kLognormal:
    case Family::kGig: return {0.0, kInf};
    case Family::kNormal:
    case Family::kLaplace:
    case Family::kStudentT:
    case Family::kCauchy:
    case Family::kGh: return {-kInf, kInf};
  }
  return {-kInf, kInf};
}

double Distribution::survival(double x) const {
  const auto& p = params_;
  const Support s = support();
  if (x < s.lower) return 1.0;
  if (x >= s.upper) return 0.0;
  switch (family_) {
    case Family::kGpd: {
      if (x <= 0.0) return 1.0;
      if (p[0] == 0.0) return std::exp(-x / p[1]);
      return std::exp(-std::log1p(p[0] * x / p[1]) / p[0]);
    }
    case Family::kPareto: return x <= 0.0 ? 1.0 : std::exp(-p[0] * std::log1p(x / p[1]));
    case Family::kExponential: return x <= 0.0 ? 1.0 : std::exp(-p[0] * x);
    case Family::kWeibull: return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / p[0], p[1]));
    case Family::kBurr: return x <= 0.0 ? 1.0 : std::exp(-p[0] * std::log1p(std::pow(x, p[2]) / p[1]));
    case Family::kGompertz: return x <= 0.0 ? 1.0 : std::exp(-(p[0] / p[1]) * std::expm1(p[1] * x));
    case Family::kGamma: return x <= 0.0 ? 1.0 : boost::math::gamma_q(p[0], p[1] * x);
    case Family::kBeta: return x <= 0.0 ? 1.0 : boost::math::ibetac(p[0], p[1], x);
    case Family::kLognormal: return x <= 0.0 ? 1.0 : std_normal_cdf(-(std::log(x) - p[0]) / p[1]);
    case Family::kNormal: return std_normal_cdf(-(x - p[0]) / p[1]);
    case Family::kLaplace: {
      const double z = (x - p[0]) / p[1];
      const double tau = p[2];
      if (z < 0.0) return 1.0 - tau * std::exp((1.0 - tau) * z);
      return (1.0 - tau) * std::exp(-tau * z);
    }
    case Family::kStudentT: {
      const boost::math::students_t_distribution<double> t(p[0]);
      return boost::math::cdf(boost::math::complement(t, (x - p[1]) / p[2]));
    }
    case Family::kCauchy: return std::atan2(1.0, (x - p[0]) / p[1]) / std::numbers::pi;
    case Family::kGh:
    case Family::kGig: return table_->survival(x);
  }
  return kNaN;
}

double Distribution::cdf(double x) const {
  const auto& p = params_;
  const Support s = support();
  if (x < s.lower) return 0.0;
  if (x >= s.upper) return 1.0;
  switch (family_) {
    case Family::kExponential: return x <= 0.0 ? 0.0 : -std::expm1(-p[0] * x);
    case Family::kWeibull: return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / p[0], p[1]));
    case Family::kGompertz: return x <= 0.0 ? 0.0 : -std::expm1(-(p[0] / p[1]) * std::expm1(p[1] * x));
    case Family::kGpd:
      if (x <= 0.0) return 0.0;
      if (p[0] == 0.0) return -std::expm1(-x / p[1]);
      return -std::expm1(-std::log1p(p[0] * x / p[1]) / p[0]);
    case Family::kPareto: return x <= 0.0 ? 0.0 : -std::expm1(-p[0] * std::log1p(x / p[1]));
    case Family::kBurr: return x <= 0.0 ? 0.0 : -std::expm1(-p[0] * std::log1p(std::pow(x, p[2]) / p[1]));
    case Family::kGamma: return x <= 0.0 ? 0.0 : boost::math::gamma_p(p[0], p[1] * x);
    case Family::kBeta: return x <= 0.0 ? 0.0 : boost::math::ibeta(p[0], p[1], x);
    case Family::kLognormal: return x <= 0.0 ? 0.0 : std_normal_cdf((std::log(x) - p[0]) / p[1]);
    case Family::kNormal: return std_normal_cdf((x - p[0]) / p[1]);
    case Family::kLaplace: {
      const double z = (x - p[0]) / p[1];
      const double tau = p[2];
      if (z < 0.0) return tau * std::exp((1.0 - tau) * z);
      return 1.0 - (1.0 - tau) * std::exp(-tau * z);
    }
    case Family::kStudentT: {
      const boost::math::students_t_distribution<double> t(p[0]);
      return boost::math::cdf(t, (x - p[1]) / p[2]);
    }
    case Family::kCauchy: return std::atan2(1.0, -(x - p[0]) / p[1]) / std::numbers::pi;
    case Family::kGh:
    case Family::kGig: return table_->cdf(x);
  }
  return kNaN;
}

double Distribution::pdf(double x) const {
  const auto& p = params_;
  const Support s = support();
  if (x < s.lower || x > s.upper) return 0.0;
  switch (family_) {
    case Family::kGpd:
      if (p[0] == 0.0) return std::exp(-x / p[1]) / p[1];
      return std::exp(-(1.0 / p[0] + 1.0) * std::log1p(p[0] * x / p[1])) / p[1];
    case Family::kPareto: return p[0] / p[1] * std::exp(-(p[0] + 1.0) * std::log1p(x / p[1]));
    case Family::kExponential: return p[0] * std::exp(-p[0] * x);
    case Family::kWeibull: {
      if (x == 0.0) return p[1] == 1.0 ? 1.0 / p[0] : (p[1] < 1.0 ? kInf : 0.0);
      const double z = x / p[0];
      return p[1] / p[0] * std::pow(z, p[1] - 1.0) * std::exp(-std::pow(z, p[1]));
    }
    case Family::kBurr: {
      if (x == 0.0) return p[2] == 1.0 ? p[0] / p[1] : (p[2] < 1.0 ? kInf : 0.0);
      const double xt = std::pow(x, p[2]);
      return p[0] * p[2] * xt / x / p[1] * std::exp(-(p[0] + 1.0) * std::log1p(xt / p[1]));
    }
    case Family::kGompertz: return p[0] * std::exp(p[1] * x - (p[0] / p[1]) * std::expm1(p[1] * x));
    case Family::kGamma: return p[1] * boost::math::gamma_p_derivative(p[0], p[1] * x);
    case Family::kBeta: return boost::math::ibeta_derivative(p[0], p[1], x);
    case Family::kLognormal: {
      if (x <= 0.0) return 0.0;
      const double z = (std::log(x) - p[0]) / p[1];
      return std::exp(-0.5 * z * z) / (x * p[1] * std::sqrt(2.0 * std::numbers::pi));
    }
    case Family::kNormal: {
      const double z = (x - p[0]) / p[1];
      return std::exp(-0.5 * z * z) / (p[1] * std::sqrt(2.0 * std::numbers::pi));
    }
    case Family::kLaplace: {
      const double z = (x - p[0]) / p[1];
      const double tau = p[2];
      const double rho = z * (tau - (z < 0.0 ? 1.0 : 0.0));
      return tau * (1.0 - tau) / p[1] * std::exp(-rho);
    }
    case Family::kStudentT: {
      const boost::math::students_t_distribution<double> t(p[0]);
      return boost::math::pdf(t, (x - p[1]) / p[2]) / p[2];
    }
    case Family::kCauchy: {
      const double z = (x - p[0]) / p[1];
      return 1.0 / (std::numbers::pi * p[1] * (1.0 + z * z));
    }
    case Family::kGh:
    case Family::kGig: return table_->pdf(x);
  }
  return kNaN;
}

double Distribution::quantile(double prob) const {
  if (!(prob >= 0.0 && prob <= 1.0)) throw InputError("probability outside [0, 1]");
  const Support s = support();
  if (prob == 0.0) return s.lower;
  if (prob == 1.0) return s.upper;
  const auto& p = params_;
  const double lq = std::log1p(-prob);  // log survival
  switch (family_) {
    case Family::kGpd:
      if (p[0] == 0.0) return -p[1] * lq;
      return p[1] / p[0] * std::expm1(-p[0] * lq);
    case Family::kPareto: return p[1] * std::expm1(-lq / p[0]);
    case Family::kExponential: return -lq / p[0];
    case Family::kWeibull: return p[0] * std::pow(-lq, 1.0 / p[1]);
    case Family::kBurr: return std::pow(p[1] * std::expm1(-lq / p[0]), 1.0 / p[2]);
    case Family::kGompertz: return std::log1p(-(p[1] / p[0]) * lq) / p[1];
    case Family::kGamma: return boost::math::gamma_p_inv(p[0], prob) / p[1];
    case Family::kBeta: return boost::math::ibeta_inv(p[0], p[1], prob);
    case Family::kLognormal: return std::exp(p[0] + p[1] * std_normal_quantile(prob));
    case Family::kNormal: return p[0] + p[1] * std_normal_quantile(prob);
    case Family::kLaplace: {
      const double tau = p[2];
      if (prob < tau) return p[0] + p[1] * std::log(prob / tau) / (1.0 - tau);
      return p[0] - p[1] * std::log((1.0 - prob) / (1.0 - tau)) / tau;
    }
    case Family::kStudentT: {
      const boost::math::students_t_distribution<double> t(p[0]);
      return p[1] + p[2] * boost::math::quantile(t, prob);
    }
    case Family::kCauchy: return p[0] + p[1] * std::tan(std::numbers::pi * (prob - 0.5));
    case Family::kGh:
    case Family::kGig: break;
  }
  // Bracket from the pivot outward, then solve cdf(x) = prob.
  const double c = pivot();
  const double w = scale();
  double lo = c;
  double hi = c;
  if (cdf(c) > prob) {
    double step = w;
    do {
      hi = lo;
      lo = std::isfinite(s.lower) ? s.lower + (lo - s.lower) * 0.5 : lo - step;
      step *= 2.0;
    } while (cdf(lo) > prob && lo - s.lower > 1e-300);
  } else {
    double step = w;
    do {
      lo = hi;
      hi += step;
      step *= 2.0;
    } while (cdf(hi) < prob && std::isfinite(hi));
  }
  std::uintmax_t iters = 200;
  const auto fn = [&](double x) { return cdf(x) - prob; };
  const auto r = boost::math::tools::toms748_solve(fn, lo, hi, boost::math::tools::eps_tolerance<double>(48), iters);
  return 0.5 * (r.first + r.second);
}

double Distribution::draw(Rng& rng) const {
  const auto& p = params_;
  switch (family_) {
    case Family::kGamma: {
      std::gamma_distribution<double> g(p[0], 1.0 / p[1]);
      return g(rng);
    }
    case Family::kBeta: {
      std::gamma_distribution<double> a(p[0], 1.0);
      std::gamma_distribution<double> b(p[1], 1.0);
      const double x = a(rng);
      const double y = b(rng);
      return x / (x + y);
    }
    case Family::kStudentT: {
      std::normal_distribution<double> z(0.0, 1.0);
      std::gamma_distribution<double> g(0.5 * p[0], 2.0);
      const double num = z(rng);
      return p[1] + p[2] * num / std::sqrt(g(rng) / p[0]);
    }
    case Family::kGh: return gh_draw(gh_params(), rng);
    case Family::kGig: return gig_draw(gig_params(), rng);
    default: return quantile(uniform_open(rng));
  }
}

Sample Distribution::sample(Rng& rng, std::size_t n) const {
  if (n == 0) throw InputError("sample size must be positive");
  std::vector<double> out(n);
  for (auto& x : out) x = draw(rng);
  return Sample(std::move(out));
}

bool Distribution::has_finite_mean() const {
  const auto& p = params_;
  switch (family_) {
    case Family::kGpd: return p[0] < 1.0;
    case Family::kPareto: return p[0] > 1.0;
    case Family::kBurr: return p[0] * p[2] > 1.0;
    case Family::kStudentT: return p[0] > 1.0;
    case Family::kCauchy: return false;
    case Family::kGh:
    case Family::kGig:
      try {
        (void)mean();
        return true;
      } catch (const NumericError&) {
        return false;
      }
    default: return true;
  }
}

double Distribution::mean() const {
  const auto& p = params_;
  const auto infinite = [&] { return NumericError(to_string() + ": mean is infinite or undefined"); };
  switch (family_) {
    case Family::kGpd:
      if (p[0] >= 1.0) throw infinite();
      return p[1] / (1.0 - p[0]);
    case Family::kPareto:
      if (p[0] <= 1.0) throw infinite();
      return p[1] / (p[0] - 1.0);
    case Family::kExponential: return 1.0 / p[0];
    case Family::kWeibull: return p[0] * std::tgamma(1.0 + 1.0 / p[1]);
    case Family::kBurr:
      if (p[0] * p[2] <= 1.0) throw infinite();
      return std::pow(p[1], 1.0 / p[2]) * p[0] * boost::math::beta(p[0] - 1.0 / p[2], 1.0 + 1.0 / p[2]);
    case Family::kGompertz:
      // E X = (1/lambda) e^(a/lambda) E_1(a/lambda)
      return std::exp(p[0] / p[1]) * boost::math::expint(1, p[0] / p[1]) / p[1];
    case Family::kGamma: return p[0] / p[1];
    case Family::kBeta: return p[0] / (p[0] + p[1]);
    case Family::kLognormal: return std::exp(p[0] + 0.5 * p[1] * p[1]);
    case Family::kNormal: return p[0];
    case Family::kLaplace: return p[0] + p[1] * (1.0 - 2.0 * p[2]) / (p[2] * (1.0 - p[2]));
    case Family::kStudentT:
      if (p[0] <= 1.0) throw infinite();
      return p[1];
    case Family::kCauchy: throw infinite();
    case Family::kGh: {
      const GhParams g = gh_params();
      if (gh_validate(g) == GhCase::kGaussianLimit) return gh_mean(g);
      if (g.beta == 0.0) {
        // Symmetric: the mean exists iff E sqrt(W) does.
        try {
          (void)gig_moment(gh_mixing(g), 0.5);
        } catch (const NumericError&) {
          throw infinite();
        }
        return g.mu;
      }
      try {
        return gh_mean(g);
      } catch (const NumericError&) {
        throw infinite();
      }
    }
    case Family::kGig:
      try {
        return gig_moment(gig_params(), 1.0);
      } catch (const NumericError&) {
        throw infinite();
      }
  }
  return kNaN;
}

double Distribution::mean_abs() const {
  if (support().lower >= 0.0) return mean();
  if (!has_finite_mean()) throw NumericError(to_string() + ": E|X| is infinite");
  const auto& p = params_;
  if (family_ == Family::kNormal) {
    const double m = p[0];
    const double sd = p[1];
    return sd * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * m * m / (sd * sd)) +
           m * (1.0 - 2.0 * std_normal_cdf(-m / sd));
  }
  // E|X| = int_0^inf S + int_-inf^0 F
  const double w = scale();
  const QuadratureOptions opts{1e-12, 1e-10, 1'000'000};
  const double pos = integrate_upper([this](double x) { return survival(x); }, 0.0, w, opts).value;
  const double neg = integrate_lower([this](double x) { return cdf(x); }, 0.0, w, opts).value;
  return pos + neg;
}

double Distribution::scale() const {
  const auto& p = params_;
  switch (family_) {
    case Family::kGpd: return p[1];
    case Family::kPareto: return p[1];
    case Family::kExponential: return 1.0 / p[0];
    case Family::kWeibull: return p[0];
    case Family::kBurr: return std::pow(p[1], 1.0 / p[2]);
    case Family::kGompertz: return std::min(1.0 / p[1], 1.0 / p[0]);
    case Family::kGamma: return std::sqrt(p[0]) / p[1];
    case Family::kBeta: return 0.25;
    case Family::kLognormal: return std::exp(p[0]);
    case Family::kNormal:
    case Family::kLaplace: return p[1];
    case Family::kStudentT: return p[2];
    case Family::kCauchy: return p[1];
    case Family::kGh: {
      const GhParams g = gh_params();
      try {
        const double sd = std::sqrt(gh_variance(g));
        if (std::isfinite(sd) && sd > 0.0) return sd;
      } catch (const NumericError&) {
      }
      return g.delta > 0.0 ? g.delta : 1.0 / g.alpha;
    }
    case Family::kGig: {
      const GigParams g = gig_params();
      try {
        const double m = gig_moment(g, 1.0);
        if (std::isfinite(m) && m > 0.0) return m;
      } catch (const NumericError&) {
      }
      return pivot();
    }
  }
  return 1.0;
}

double Distribution::pivot() const {
  switch (family_) {
    case Family::kGh: {
      const GhParams g = gh_params();
      if (gh_validate(g) == GhCase::kGaussianLimit) return gh_mean(g);
      return g.mu;
    }
    case Family::kGig: {
      // Mode of the GIG density.
      const GigParams g = gig_params();
      if (g.psi == 0.0) return g.chi / (2.0 * (1.0 - g.lambda));
      const double a = g.lambda - 1.0;
      const double m = (a + std::sqrt(a * a + g.chi * g.psi)) / g.psi;
      return m > 0.0 ? m : gig_moment(g, 1.0);
    }
    default: return quantile(0.5);
  }
}

std::optional<double> Distribution::closed_form_mef(double u) const {
  const auto& p = params_;
  switch (family_) {
    case Family::kGpd: {
      if (p[0] >= 1.0) return std::nullopt;
      const double v = std::max(u, 0.0);
      if (p[0] < 0.0 && v >= -p[1] / p[0]) return 0.0;
      const double e = (p[1] + p[0] * v) / (1.0 - p[0]);
      return e + (v - u);
    }
    case Family::kExponential: return 1.0 / p[0] + std::max(0.0, -u);
    case Family::kPareto: {
      if (p[0] <= 1.0) return std::nullopt;
      const double v = std::max(u, 0.0);
      return (p[1] + v) / (p[0] - 1.0) + (v - u);
    }
    default: return std::nullopt;
  }
}

std::vector<double> fdelta_check(const std::function<double(double)>& cdf, double u0, double u1,
                                 std::span<const double> deltas) {
  if (!(u0 < u1)) throw InputError("fdelta_check requires u0 < u1");
  constexpr int kPoints = 512;
  std::vector<double> out;
  out.reserve(deltas.size());
  for (double d : deltas) {
    if (!(d > 0.0)) throw InputError("deltas must be positive");
    double sup = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      const double v = u0 + (u1 - u0) * i / (kPoints - 1);
      const double r = (cdf(v) - cdf(v - d)) / std::sqrt(d);
      sup = std::max(sup, r * r);
    }
    out.push_back(sup);
  }
  return out;
}

std::vector<double> fdelta_check(const Distribution& dist, double u0, double u1, std::span<const double> deltas) {
  return fdelta_check([&dist](double x) { return dist.cdf(x); }, u0, u1, deltas);
}

}  // namespace meanex
