#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "meanex/band.hpp"
#include "meanex/distribution.hpp"
#include "meanex/mef.hpp"

namespace meanex {

/// Worker count from MEANEX_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
[[nodiscard]] std::size_t default_worker_count();

struct RunOptions {
  std::size_t workers = 0;  // 0: default_worker_count()
  /// Dispatch replicates in a shuffled order (results must not change).
  std::optional<std::uint64_t> shuffle_seed;
};

/// Calls task(i) for i in [0, count) on up to `workers` threads. If tasks
/// throw, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task, const RunOptions& opts = {});

struct StallionCurve {
  MefCurve curve;
  std::vector<std::size_t> contributors;  // replicates defined at each point
  std::size_t n_reps = 0;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  Distribution dist;
};

/// Averages the empirical mef of n_reps samples of size sample_size on a
/// shared grid. Replicate r draws from derive_seed(seed, r); points without
/// exceedances are skipped and counted in `contributors`. Throws InputError
/// when the grid leaves the support.
[[nodiscard]] StallionCurve stallion(const Distribution& dist, std::size_t n_reps, std::size_t sample_size,
                                     const Grid& grid, std::uint64_t seed, const RunOptions& opts = {});

/// Default stallion grid: `points` equispaced values on [Q(0.01), Q(0.99)].
[[nodiscard]] Grid support_grid(const Distribution& dist, std::size_t points = 200);

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, double>> metrics;
  std::size_t replicate_count = 0;
  std::uint64_t seed = 0;

  void add(std::string key, double value);
  /// Throws InputError for an unknown key.
  [[nodiscard]] double metric(std::string_view key) const;
};

/// Fraction of replicates whose oracle band (true S(u1) and E|X|) contains
/// the true mef at every one of `grid_points` equispaced points of [u0, u1].
/// Throws NumericError before running anything when the band is undefined.
[[nodiscard]] ExperimentReport coverage_experiment(const Distribution& dist, const BandConstants& constants,
                                                   std::size_t sample_size, std::size_t n_reps, std::uint64_t seed,
                                                   double eps = 0.05, std::size_t grid_points = 50,
                                                   const RunOptions& opts = {});

/// For each size, the median over replicates of sup |e_n - e| on a
/// 100-point grid from the support's lower end (or Q(0.01)) to u1.
/// Metrics are named "median_sup_n=<size>".
[[nodiscard]] ExperimentReport convergence_experiment(const Distribution& dist, double u1,
                                                      std::span<const std::size_t> sizes, std::size_t n_reps,
                                                      std::uint64_t seed, const RunOptions& opts = {});

/// E (Z_1 + ... + Z_n)^4 = n kappa2 + 3 n (n - 1) kappa1^2 for i.i.d.
/// centred Z with variance kappa1 and fourth moment kappa2. Throws
/// InputError("inconsistent moments") when kappa2 < kappa1^2.
[[nodiscard]] double fourth_moment_identity(double kappa1, double kappa2, std::size_t n);

/// The same expectation by full enumeration of support^n after centring the
/// support. Throws InputError for n > 8, probabilities not summing to 1, or
/// more than 1e7 outcomes.
[[nodiscard]] double fourth_moment_oracle(std::span<const std::pair<double, double>> support, std::size_t n);

}  // namespace meanex
