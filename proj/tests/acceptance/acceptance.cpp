// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "meanex/band.hpp"
#include "meanex/bessel.hpp"
#include "meanex/cli.hpp"
#include "meanex/distribution.hpp"
#include "meanex/gh.hpp"
#include "meanex/gig.hpp"
#include "meanex/gof.hpp"
#include "meanex/mef.hpp"
#include "meanex/montecarlo.hpp"
#include "meanex/ohlcv.hpp"
#include "meanex/quadrature.hpp"

using namespace meanex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome gpd_linearity() {
  Outcome o;
  Rng rng(derive_seed(20240601, 1));
  const Sample s = Distribution::parse("gpd(xi=0.25,beta=1)").sample(rng, 4000);
  const auto fit = fit_gpd(empirical_mef_curve(s, default_grid(s, GridPolicy::order_statistics())));
  o.detail = fmt("xi_hat=%.4f beta_hat=%.4f", fit.params.xi, fit.params.beta);
  o.require(std::abs(fit.params.xi - 0.25) <= 0.10, "xi_hat outside 0.25+-0.10");
  o.require(std::abs(fit.params.beta - 1.0) <= 0.15, "beta_hat outside 1+-0.15");
  return o;
}

Outcome exponential_stallion() {
  Outcome o;
  const auto d = Distribution::parse("exponential(lambda=2)");
  const auto st = stallion(d, 200, 2000, Grid::linspace(0.1, 1.5, 141), 20240602);
  double worst = 0.0;
  for (const auto& v : st.curve.values) worst = std::max(worst, v ? std::abs(*v - 0.5) : INFINITY);
  o.detail = fmt("max |stallion - 0.5| = %.4f", worst);
  o.require(worst <= 0.05, "deviation above 0.05");
  return o;
}

Outcome fourth_moment() {
  Outcome o;
  Rng rng(20240603);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t k = 2 + t % 2;
    std::vector<std::pair<double, double>> sup;
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double w = 0.05 + uniform_open(rng);
      sup.emplace_back(-4.0 + 8.0 * uniform_open(rng), w);
      total += w;
    }
    double mean = 0.0;
    for (auto& [v, p] : sup) {
      p /= total;
      mean += v * p;
    }
    double k1 = 0.0, k2 = 0.0;
    for (auto& [v, p] : sup) {
      v -= mean;
      k1 += p * v * v;
      k2 += p * v * v * v * v;
    }
    for (std::size_t n = 1; n <= 4; ++n) {
      const double id = fourth_moment_identity(k1, k2, n);
      const double en = fourth_moment_oracle(sup, n);
      worst = std::max(worst, std::abs(id - en) / std::abs(en));
    }
  }
  o.detail = fmt("max relative gap %.2e over 200 cases", worst);
  o.require(worst <= 1e-12, "identity and enumeration disagree");
  return o;
}

Outcome bessel() {
  Outcome o;
  double worst = 0.0;
  for (double x : {0.1, 1.0, 10.0}) {
    const double half = std::sqrt(std::numbers::pi / (2 * x)) * std::exp(-x);
    const double three_half = half * (1 + 1 / x);
    for (auto [nu, want] : {std::pair{0.5, half}, std::pair{1.5, three_half}}) {
      worst = std::max(worst, std::abs(bessel_k(nu, x) - want) / want);
      worst = std::max(worst, std::abs(std::exp(detail::log_bessel_k_integral(nu, x)) - want) / want);
    }
  }
  o.require(worst <= 1e-10, "closed forms");
  Rng rng(20240604);
  double sym = 0.0, rec = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double nu = -6.0 + 12.0 * uniform_open(rng);
    const double x = 0.05 + 20.0 * uniform_open(rng);
    sym = std::max(sym, std::abs(bessel_k(nu, x) - bessel_k(-nu, x)) / bessel_k(nu, x));
    const double lhs = bessel_k(nu + 1, x);
    const double rhs = bessel_k(nu - 1, x) + 2 * nu / x * bessel_k(nu, x);
    rec = std::max(rec, std::abs(lhs - rhs) / lhs);
  }
  o.detail = fmt("closed forms %.1e, ", worst) + fmt("symmetry %.1e, recurrence %.1e", sym, rec);
  o.require(sym <= 1e-10, "symmetry");
  o.require(rec <= 1e-10, "recurrence");
  return o;
}

Outcome gh_normalization() {
  Outcome o;
  const std::vector<GhParams> rows{
      {1.0, 1.5, -0.5, 0.75, 0.2},              // hyperbolic
      {-1.278, 0.01186, 0.01186, 0.0766, 1.005},  // asymmetric Student
      {-1.247, 0.0148, -0.0147, 0.076, 1.005},    // asymmetric Student
      {-0.5, 8.03, -1.37, 0.051, 0.0105},         // NIG
      {-0.5, 7.6, -1.24, 0.052, 0.0103},          // NIG
  };
  const QuadratureOptions opts{1e-12, 1e-10, 2'000'000};
  double worst = 0.0;
  for (const auto& p : rows) {
    const GhDensity f(p);
    const double mass = integrate_lower(f, p.mu, p.delta, opts).value + integrate_upper(f, p.mu, p.delta, opts).value;
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  o.detail = fmt("max |mass - 1| = %.2e over 5 rows", worst);
  o.require(worst <= 1e-4, "mass off");
  return o;
}

Outcome gig_sampler() {
  Outcome o;
  const std::vector<GigParams> cases{{-0.5, 1.0, 1.0}, {1.0, 1.0, 1.0}, {2.0, 0.5, 2.0}};
  double worst = 0.0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    Rng rng(derive_seed(20240605, c));
    const Sample s = gig_sample(cases[c], rng, 1'000'000);
    double m1 = 0.0, m2 = 0.0;
    for (double w : s.values()) {
      m1 += w;
      m2 += w * w;
    }
    const double n = 1e6;
    m1 /= n;
    m2 /= n;
    const double e1 = gig_moment(cases[c], 1), e2 = gig_moment(cases[c], 2);
    const double e4 = gig_moment(cases[c], 4);
    const double z1 = std::abs(m1 - e1) / std::sqrt((e2 - e1 * e1) / n);
    const double z2 = std::abs(m2 - e2) / std::sqrt((e4 - e2 * e2) / n);
    worst = std::max({worst, z1, z2});
  }
  o.detail = fmt("max |z| = %.2f standard errors", worst);
  o.require(worst <= 3.0, "moment outside 3 SE");
  return o;
}

Outcome convergence() {
  Outcome o;
  const auto d = Distribution::parse("exponential(lambda=1)");
  const std::vector<std::size_t> sizes{100, 1000, 10000};
  const auto r = convergence_experiment(d, d.quantile(0.9), sizes, 50, 20240607);
  const double a = r.metric("median_sup_n=100");
  const double b = r.metric("median_sup_n=1000");
  const double c = r.metric("median_sup_n=10000");
  o.detail = fmt("medians %.4f, ", a) + fmt("%.4f, %.4f", b, c);
  o.require(a > b && b > c, "not strictly decreasing");
  return o;
}

Outcome band_structure() {
  Outcome o;
  const auto d = Distribution::parse("exponential(lambda=1)");
  const auto c = band_constants(0.0, 1.0);
  Rng rng(20240608);
  const Sample s = d.sample(rng, 4000);
  const Band b = consistency_band(s, Grid::linspace(0.0, 1.0, 101), c, BandMode::oracle(d.survival(1.0), 1.0));
  bool symmetric = true;
  for (std::size_t i = 0; i < b.lower.size(); ++i) {
    const double e = *b.curve.values[i];
    symmetric = symmetric && b.upper[i] == e + b.half_width() && b.lower[i] == e - b.half_width();
  }
  o.require(symmetric, "band not symmetric");

  bool monotone = true;
  double prev = INFINITY;
  for (std::size_t n = 100; n <= 1'000'000; n *= 2) {
    const double en = band_en(c, d.survival(1.0), 1.0, n);
    monotone = monotone && en <= prev;
    prev = en;
  }
  o.require(monotone, "E_n increases with n");

  const double hw1 = band_en(c, d.survival(1.0), 1.0, 10000) / 100.0;
  const double hw4 = band_en(c, d.survival(1.0), 1.0, 40000) / 200.0;
  const double ratio = hw4 / hw1;
  o.require(ratio >= 0.48 && ratio <= 0.52, "half-width ratio outside [0.48, 0.52]");

  const auto rep = coverage_experiment(d, c, 4000, 500, 20240608, 0.05);
  const double cov = rep.metric("coverage");
  o.detail = fmt("ratio(4n/n) = %.4f, ", ratio) + fmt("coverage = %.3f (nominal %.2f)", cov, 0.95);
  o.require(cov >= 0.95, "coverage below 0.95");
  return o;
}

Outcome variance_bootstrap() {
  Outcome o;
  const auto d = Distribution::parse("exponential(lambda=1)");
  Rng rng(20240609);
  const Sample s = d.sample(rng, 4000);
  const double u = s.quantile(0.5);
  const double av = asymptotic_variance(s, u) / 4000.0;
  Rng boot(derive_seed(20240609, 1));
  std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
  std::vector<double> stats, resample(s.size());
  for (int r = 0; r < 500; ++r) {
    for (auto& x : resample) x = s[pick(boot)];
    stats.push_back(empirical_mef(Sample(resample), u));
  }
  double m = 0.0;
  for (double v : stats) m += v;
  m /= 500.0;
  double var = 0.0;
  for (double v : stats) var += (v - m) * (v - m);
  var /= 500.0;
  const double rel = std::abs(av - var) / var;
  o.detail = fmt("plug-in %.3e vs bootstrap %.3e", av, var) + fmt(", relative gap %.3f", rel);
  o.require(rel <= 0.15, "gap above 15%");
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome data_pipeline() {
  Outcome o;
  const std::string path = MEANEX_TEST_DATA "/synthetic_ohlcv.csv";
  const PriceSeries s = read_ohlcv_file(path);
  o.require(s.records.size() == 500, "fixture does not have 500 rows");
  double exp_log = 0.0, gross_simple = 0.0;
  for (auto f : {PriceField::kOpen, PriceField::kHigh, PriceField::kLow, PriceField::kClose, PriceField::kVolume}) {
    const auto g = return_values(s, f, ReturnKind::kGross);
    const auto r = return_values(s, f, ReturnKind::kSimple);
    const auto l = log_return_values(s, f);
    for (std::size_t i = 0; i < g.size(); ++i) {
      exp_log = std::max(exp_log, std::abs(std::exp(l[i]) - g[i]) / g[i]);
      gross_simple = std::max(gross_simple, std::abs((g[i] - 1.0) - r[i]));
    }
  }
  o.require(exp_log <= 1e-12, "exp(log-return) differs from gross return");
  o.require(gross_simple <= 1e-15, "gross - 1 differs from simple return");
  const PriceSeries again = parse_ohlcv_csv(serialize(s), s.symbol);
  o.require(again == s, "parse/serialize round trip");

  const auto dir = std::filesystem::temp_directory_path() / "meanex_acceptance";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "compare.csv").string();
  const std::vector<std::string> args{
      "compare", "--data", path, "--field", "close", "--log-returns", "--dist",
      "gh(lambda=-0.5,alpha=7.6,beta=-1.24,delta=0.052,mu=0.0103)", "--seed", "7", "--csv", csv};
  std::ostringstream out, err;
  const int c1 = cli::run(args, out, err);
  const std::string first = slurp(csv);
  const int c2 = cli::run(args, out, err);
  const std::string second = slurp(csv);
  o.require(c1 == 0 && c2 == 0, "compare failed: " + err.str());
  o.require(!first.empty() && first == second, "compare output differs between runs");
  o.detail = fmt("exp/log %.1e, ", exp_log) + fmt("gross-simple %.1e, compare %.0f bytes identical", gross_simple,
                                                   static_cast<double>(first.size()));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0: no runtime bound
  };
  const std::vector<Criterion> criteria{
      {"GPD linearity fit", gpd_linearity, 1.0},
      {"exponential stallion", exponential_stallion, 15.0},
      {"fourth-moment identity", fourth_moment, 1.0},
      {"Bessel K closed forms and identities", bessel, 0.0},
      {"GH normalization", gh_normalization, 5.0},
      {"GIG sampler moments", gig_sampler, 0.0},
      {"uniform convergence", convergence, 30.0},
      {"band structure and coverage", band_structure, 0.0},
      {"influence-function variance", variance_bootstrap, 0.0},
      {"data pipeline", data_pipeline, 0.0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].budget_s > 0 && secs >= criteria[i].budget_s) {
      o.pass = false;
      o.detail += fmt("; runtime %.2f s over budget %.0f s", secs, criteria[i].budget_s);
    }
    std::printf("%s [%2zu] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
