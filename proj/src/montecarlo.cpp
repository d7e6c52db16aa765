#include "meanex/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "meanex/error.hpp"
#include "meanex/rng.hpp"

namespace meanex {
namespace {

// Pairwise summation: the result depends only on the order of `xs`.
double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

}  // namespace

std::size_t default_worker_count() {
  if (const char* env = std::getenv("MEANEX_THREADS")) {
    std::size_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task, const RunOptions& opts) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (opts.shuffle_seed) {
    Rng rng(*opts.shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  const std::size_t workers = std::min(count, opts.workers > 0 ? opts.workers : default_worker_count());

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = count;
  std::exception_ptr failure;
  const auto run = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= count) return;
      const std::size_t i = order[slot];
      try {
        task(i);
      } catch (...) {
        const std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
}

StallionCurve stallion(const Distribution& dist, std::size_t n_reps, std::size_t sample_size, const Grid& grid,
                       std::uint64_t seed, const RunOptions& opts) {
  if (n_reps == 0) throw InputError("stallion needs at least one replicate");
  if (sample_size == 0) throw InputError("stallion needs a positive sample size");
  const Support sup = dist.support();
  if (grid.front() < sup.lower || grid.back() >= sup.upper) {
    throw InputError("stallion grid leaves the support of " + dist.to_string());
  }
  const std::size_t m = grid.size();
  // rows[r * m + j]: replicate r at grid point j, NaN where undefined.
  std::vector<double> rows(n_reps * m);
  parallel_for(
      n_reps,
      [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        const Sample s = dist.sample(rng, sample_size);
        const MefCurve c = empirical_mef_curve(s, grid, EmptyPolicy::kUndefined);
        for (std::size_t j = 0; j < m; ++j) {
          rows[r * m + j] = c.values[j] ? *c.values[j] : std::numeric_limits<double>::quiet_NaN();
        }
      },
      opts);

  std::vector<std::optional<double>> values(m);
  std::vector<std::size_t> contributors(m, 0);
  std::vector<double> column;
  column.reserve(n_reps);
  for (std::size_t j = 0; j < m; ++j) {
    column.clear();
    for (std::size_t r = 0; r < n_reps; ++r) {
      const double v = rows[r * m + j];
      if (!std::isnan(v)) column.push_back(v);
    }
    contributors[j] = column.size();
    if (!column.empty()) values[j] = pairwise_sum(column) / static_cast<double>(column.size());
  }
  std::string meta = "stallion " + dist.to_string() + " reps=" + std::to_string(n_reps) +
                     " size=" + std::to_string(sample_size) + " seed=" + std::to_string(seed);
  return StallionCurve{MefCurve(grid, std::move(values), std::move(meta)), std::move(contributors), n_reps,
                       sample_size, seed, dist};
}

Grid support_grid(const Distribution& dist, std::size_t points) {
  return Grid::linspace(dist.quantile(0.01), dist.quantile(0.99), points);
}

void ExperimentReport::add(std::string key, double value) {
  if (!std::isfinite(value)) throw NumericError("metric '" + key + "' is not finite");
  metrics.emplace_back(std::move(key), value);
}

double ExperimentReport::metric(std::string_view key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  throw InputError("no metric '" + std::string(key) + "' in report " + name);
}

ExperimentReport coverage_experiment(const Distribution& dist, const BandConstants& constants,
                                     std::size_t sample_size, std::size_t n_reps, std::uint64_t seed, double eps,
                                     std::size_t grid_points, const RunOptions& opts) {
  if (n_reps == 0) throw InputError("coverage needs at least one replicate");
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  const double surv = dist.survival(constants.u1);
  const double mabs = dist.mean_abs();
  const double en = band_en(constants, surv, mabs, sample_size);
  const double hw = en / std::sqrt(static_cast<double>(sample_size));

  const Grid grid = Grid::linspace(constants.u0, constants.u1, grid_points);
  const MefCurve truth = theoretical_mef_curve(dist, grid);

  std::vector<unsigned char> covered(n_reps, 0);
  std::vector<double> sup_err(n_reps, 0.0);
  parallel_for(
      n_reps,
      [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        const Sample s = dist.sample(rng, sample_size);
        const MefCurve e = empirical_mef_curve(s, grid);
        const double d = sup_deviation(e, truth);
        sup_err[r] = d;
        covered[r] = d < hw ? 1 : 0;
      },
      opts);

  const auto hits = static_cast<double>(std::count(covered.begin(), covered.end(), 1));
  ExperimentReport rep{"coverage", {}, n_reps, seed};
  rep.add("coverage", hits / static_cast<double>(n_reps));
  rep.add("nominal", 1.0 - eps);
  rep.add("en", en);
  rep.add("half_width", hw);
  rep.add("survival_u1", surv);
  rep.add("mean_abs", mabs);
  rep.add("median_sup_error", median(sup_err));
  rep.add("sample_size", static_cast<double>(sample_size));
  return rep;
}

ExperimentReport convergence_experiment(const Distribution& dist, double u1, std::span<const std::size_t> sizes,
                                        std::size_t n_reps, std::uint64_t seed, const RunOptions& opts) {
  if (n_reps == 0) throw InputError("convergence needs at least one replicate");
  if (sizes.empty()) throw InputError("convergence needs at least one sample size");
  const Support sup = dist.support();
  if (!(u1 < sup.upper)) throw InputError("u1 must lie below the right endpoint");
  const double lo = std::isfinite(sup.lower) ? sup.lower : dist.quantile(0.01);
  if (!(lo < u1)) throw InputError("u1 must exceed the lower end of the grid");
  const Grid grid = Grid::linspace(lo, u1, 100);
  const MefCurve truth = theoretical_mef_curve(dist, grid);

  ExperimentReport rep{"convergence", {}, n_reps, seed};
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::size_t n = sizes[k];
    const std::uint64_t size_seed = derive_seed(seed, k);
    std::vector<double> dev(n_reps);
    parallel_for(
        n_reps,
        [&](std::size_t r) {
          Rng rng(derive_seed(size_seed, r));
          dev[r] = sup_deviation(empirical_mef_curve(dist.sample(rng, n), grid), truth);
        },
        opts);
    rep.add("median_sup_n=" + std::to_string(n), median(std::move(dev)));
  }
  return rep;
}

double fourth_moment_identity(double kappa1, double kappa2, std::size_t n) {
  if (n == 0) throw InputError("n must be positive");
  if (!(kappa1 >= 0.0 && kappa2 >= 0.0)) throw InputError("moments must be nonnegative");
  if (kappa2 < kappa1 * kappa1 * (1.0 - 1e-12)) throw InputError("inconsistent moments");
  const auto nn = static_cast<double>(n);
  return nn * kappa2 + 3.0 * nn * (nn - 1.0) * kappa1 * kappa1;
}

double fourth_moment_oracle(std::span<const std::pair<double, double>> support, std::size_t n) {
  if (n == 0 || n > 8) throw InputError("enumeration needs 1 <= n <= 8");
  if (support.empty()) throw InputError("empty support");
  double total = 0.0;
  double mean = 0.0;
  for (const auto& [v, p] : support) {
    if (!(p >= 0.0) || !std::isfinite(v)) throw InputError("invalid support point");
    total += p;
    mean += v * p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("probabilities must sum to 1");
  if (std::pow(static_cast<double>(support.size()), static_cast<double>(n)) > 1e7) {
    throw InputError("support too large for enumeration");
  }
  std::vector<double> centred;
  for (const auto& [v, p] : support) centred.push_back(v - mean);

  // Depth-first over all outcomes, carrying the partial sum and weight.
  double acc = 0.0;
  const std::function<void(std::size_t, double, double)> walk = [&](std::size_t depth, double sum, double w) {
    if (depth == n) {
      const double s2 = sum * sum;
      acc += w * s2 * s2;
      return;
    }
    for (std::size_t i = 0; i < support.size(); ++i) walk(depth + 1, sum + centred[i], w * support[i].second);
  };
  walk(0, 0.0, 1.0);
  return acc;
}

}  // namespace meanex
