#include "meanex/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "meanex/band.hpp"
#include "meanex/csv.hpp"
#include "meanex/distribution.hpp"
#include "meanex/error.hpp"
#include "meanex/gof.hpp"
#include "meanex/mef.hpp"
#include "meanex/montecarlo.hpp"
#include "meanex/ohlcv.hpp"
#include "meanex/svg.hpp"

namespace meanex::cli {
namespace {

struct Options {
  std::string data;
  std::string dist;
  std::string grid;
  std::optional<double> u0;
  std::optional<double> u1;
  double A = 1.0;
  double A1 = 1.0;
  double eps = 0.05;
  std::uint64_t seed = 1;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> size;
  std::string svg;
  std::string csv;
  std::string field = "close";
  bool log_returns = false;
  std::string kind = "gross";
  bool full = false;
  bool monthly = false;
  std::vector<double> deltas;
};

constexpr std::size_t kDeskReps = 200;
constexpr std::size_t kDeskSize = 2000;
constexpr std::size_t kFullReps = 6000;
constexpr std::size_t kFullSize = 4000;

bool looks_like_ohlcv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string lower(line);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return lower.find("date") != std::string::npos && lower.find("close") != std::string::npos;
  }
  return false;
}

PriceSeries load_series(const Options& o) {
  PriceSeries s = read_ohlcv_file(o.data);
  return o.monthly ? monthly_last(s) : s;
}

std::vector<double> series_values(const Options& o, const PriceSeries& s) {
  const PriceField f = parse_field(o.field);
  if (o.log_returns) return log_return_values(s, f);
  return return_values(s, f, parse_return_kind(o.kind));
}

/// Observations from --data: an OHLCV file (turned into returns) or a
/// one-column sample file.
Sample load_data(const Options& o) {
  if (o.data.empty()) throw InputError("--data is required");
  if (looks_like_ohlcv(o.data)) return Sample(series_values(o, load_series(o)));
  return read_sample_file(o.data);
}

/// Observations from --data, or --size draws of --dist.
Sample load_or_draw(const Options& o) {
  if (!o.data.empty() && !o.dist.empty()) throw InputError("--data and --dist are mutually exclusive here");
  if (!o.data.empty()) return load_data(o);
  if (o.dist.empty()) throw InputError("one of --data or --dist is required");
  if (!o.size) throw InputError("--dist needs --size");
  Rng rng(derive_seed(o.seed, 0));
  return Distribution::parse(o.dist).sample(rng, *o.size);
}

Distribution require_dist(const Options& o) {
  if (o.dist.empty()) throw InputError("--dist is required");
  return Distribution::parse(o.dist);
}

GridPolicy grid_policy(const std::string& text, std::size_t fallback) {
  if (text.empty()) return GridPolicy::linspace(fallback);
  if (text == "order-stats") return GridPolicy::order_statistics();
  std::size_t m = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), m);
  if (ec != std::errc() || ptr != text.data() + text.size() || m == 0) {
    throw InputError("--grid expects a positive count or 'order-stats', got '" + text + "'");
  }
  return GridPolicy::linspace(m);
}

std::size_t grid_count(const Options& o, std::size_t fallback) {
  const GridPolicy p = grid_policy(o.grid, fallback);
  if (p.kind == GridPolicy::Kind::kOrderStatistics) throw InputError("--grid order-stats needs sample data");
  return p.points;
}

/// Grid on [lo, hi] following --grid; order statistics are clipped to the range.
Grid range_grid(const Options& o, const Sample* sample, double lo, double hi, std::size_t fallback) {
  const GridPolicy p = grid_policy(o.grid, fallback);
  if (p.kind == GridPolicy::Kind::kLinspace) return Grid::linspace(lo, hi, p.points);
  if (sample == nullptr) throw InputError("--grid order-stats needs sample data");
  std::vector<double> pts;
  for (double x : default_grid(*sample, p).points()) {
    if (x >= lo && x <= hi) pts.push_back(x);
  }
  if (pts.empty()) throw InputError("no order statistics inside [u0, u1]");
  return Grid(std::move(pts));
}

std::pair<std::size_t, std::size_t> protocol(const Options& o) {
  std::size_t reps = o.full ? kFullReps : kDeskReps;
  std::size_t size = o.full ? kFullSize : kDeskSize;
  if (o.reps) reps = *o.reps;
  if (o.size) size = *o.size;
  if (reps == 0 || size == 0) throw InputError("--reps and --size must be positive");
  return {reps, size};
}

/// CSV goes to --csv when given, else to stdout; summaries go to whichever
/// stream the CSV does not use.
class Output {
 public:
  Output(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  void csv(const std::function<void(std::ostream&)>& write) {
    if (o_.csv.empty()) {
      write(out_);
      return;
    }
    std::ofstream f(o_.csv, std::ios::binary);
    if (!f) throw InputError("cannot write '" + o_.csv + "'");
    write(f);
  }

  void svg(const PlotSpec& spec) {
    if (o_.svg.empty()) return;
    std::ofstream f(o_.svg, std::ios::binary);
    if (!f) throw InputError("cannot write '" + o_.svg + "'");
    f << render_svg(spec);
  }

  std::ostream& info() { return o_.csv.empty() ? err_ : out_; }

 private:
  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

void cmd_emef(const Options& o, Output& io) {
  const Sample s = load_data(o);
  const Grid g = default_grid(s, grid_policy(o.grid, 200));
  const MefCurve c = empirical_mef_curve(s, g);
  io.csv([&](std::ostream& f) { write_curve_csv(f, c); });
  io.svg({{curve_series(c, "emef")}, "Empirical mean excess function"});
}

void cmd_band(const Options& o, Output& io) {
  std::optional<Distribution> dist;
  if (o.data.empty()) dist = require_dist(o);
  const Sample s = load_or_draw(o);
  const double u0 = o.u0.value_or(s.min());
  const double u1 = o.u1.value_or(s.quantile(0.9));
  const BandConstants c = band_constants(u0, u1, o.A, o.A1);
  const Grid g = range_grid(o, &s, u0, u1, 200);
  const BandMode mode = dist ? BandMode::oracle(dist->survival(u1), dist->mean_abs()) : BandMode::plugin();
  const Band b = consistency_band(s, g, c, mode);
  io.csv([&](std::ostream& f) { write_band_csv(f, b); });
  io.info() << "en=" << format_number(b.en) << "\nhalf_width=" << format_number(b.half_width())
            << "\nsurvival_u1=" << format_number(b.survival_u1) << "\nmean_abs=" << format_number(b.mean_abs)
            << "\nmode=" << (dist ? "oracle" : "plugin") << '\n';
  PlotSpec spec{band_series(b, "emef"), "Consistency band"};
  if (dist) spec.series.push_back(curve_series(theoretical_mef_curve(*dist, g), "true mef"));
  io.svg(spec);
}

void cmd_stallion(const Options& o, Output& io) {
  const Distribution d = require_dist(o);
  const auto [reps, size] = protocol(o);
  const std::size_t m = grid_count(o, 200);
  Grid g = support_grid(d, m);
  if (o.u0 || o.u1) g = Grid::linspace(o.u0.value_or(g.front()), o.u1.value_or(g.back()), m);
  const StallionCurve st = stallion(d, reps, size, g, o.seed);
  io.csv([&](std::ostream& f) { write_curve_csv(f, st.curve); });
  PlotSpec spec{{curve_series(st.curve, "stallion")}, "Stallion " + d.to_string()};
  if (d.has_finite_mean()) spec.series.push_back(curve_series(theoretical_mef_curve(d, g), "true mef"));
  io.svg(spec);
}

void cmd_coverage(const Options& o, Output& io) {
  const Distribution d = require_dist(o);
  if (!o.u0 || !o.u1) throw InputError("coverage needs --u0 and --u1");
  const auto [reps, size] = protocol(o);
  const BandConstants c = band_constants(*o.u0, *o.u1, o.A, o.A1);
  const ExperimentReport r = coverage_experiment(d, c, size, reps, o.seed, o.eps, grid_count(o, 50));
  io.csv([&](std::ostream& f) { write_report_csv(f, r); });
}

void cmd_fit_gpd(const Options& o, Output& io) {
  const Sample s = load_or_draw(o);
  const MefCurve c = empirical_mef_curve(s, default_grid(s, grid_policy(o.grid.empty() ? "order-stats" : o.grid, 200)));
  const GpdFit fit = fit_gpd(c);
  io.csv([&](std::ostream& f) { write_fit_csv(f, fit); });
  io.info() << "xi_hat=" << format_number(fit.params.xi) << "\nbeta_hat=" << format_number(fit.params.beta)
            << "\ntail=" << to_string(classify_tail(c)) << '\n';
  if (!o.svg.empty()) {
    std::vector<std::optional<double>> line(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) line[i] = fit.ols.a_hat * c.grid[i] + fit.ols.b_hat;
    io.svg({{curve_series(c, "emef"), curve_series(MefCurve(c.grid, line), "fitted line")}, "GPD fit"});
  }
}

void cmd_fdelta(const Options& o, Output& io) {
  const Distribution d = require_dist(o);
  if (!o.u0 || !o.u1) throw InputError("fdelta needs --u0 and --u1");
  const std::vector<double> deltas = o.deltas.empty() ? std::vector<double>{0.1, 0.01, 0.001, 1e-4} : o.deltas;
  const std::vector<double> stat = fdelta_check(d, *o.u0, *o.u1, deltas);
  io.csv([&](std::ostream& f) {
    f << "delta,statistic\n";
    for (std::size_t i = 0; i < deltas.size(); ++i) f << format_number(deltas[i]) << ',' << format_number(stat[i]) << '\n';
  });
}

Distribution gh_dist(const Options& o) {
  const Distribution d = require_dist(o);
  if (d.family() != Family::kGh && d.family() != Family::kGig) throw InputError("gh expects a gh(...) or gig(...) spec");
  return d;
}

void cmd_gh_pdf(const Options& o, Output& io) {
  const Distribution d = gh_dist(o);
  const Grid g = Grid::linspace(o.u0.value_or(d.quantile(0.001)), o.u1.value_or(d.quantile(0.999)), grid_count(o, 401));
  std::vector<std::optional<double>> pdf(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) pdf[i] = d.pdf(g[i]);
  io.csv([&](std::ostream& f) { write_columns_csv(f, g, {"pdf"}, {pdf}); });
  if (d.family() == Family::kGh) io.info() << "class=" << to_string(gh_validate(d.gh_params())) << '\n';
  PlotSpec spec{{{"density", {g.points().begin(), g.points().end()}, pdf, false}}, d.to_string(), "x", "density"};
  io.svg(spec);
}

void cmd_gh_sample(const Options& o, Output& io) {
  const Distribution d = gh_dist(o);
  if (!o.size) throw InputError("gh sample needs --size");
  Rng rng(derive_seed(o.seed, 0));
  std::vector<double> xs(*o.size);
  for (auto& x : xs) x = d.draw(rng);
  io.csv([&](std::ostream& f) {
    f << "x\n";
    for (double x : xs) f << format_number(x) << '\n';
  });
}

void cmd_ingest(const Options& o, Output& io) {
  if (o.data.empty()) throw InputError("--data is required");
  const PriceSeries s = load_series(o);
  const std::vector<double> v = series_values(o, s);
  const std::string name = o.log_returns ? "log_return" : (o.kind == "simple" ? "simple_return" : "gross_return");
  io.csv([&](std::ostream& f) {
    f << "date," << name << '\n';
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& d = s.records[i + 1].date;
      char buf[16];
      std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                    static_cast<unsigned>(d.day()));
      f << buf << ',' << format_number(v[i]) << '\n';
    }
  });
  io.info() << "records=" << s.records.size() << "\nreturns=" << v.size() << '\n';
}

void cmd_compare(const Options& o, Output& io) {
  const Sample s = load_data(o);
  const Distribution d = require_dist(o);
  const std::size_t reps = o.reps.value_or(o.full ? kFullReps : kDeskReps);
  const std::size_t size = o.size.value_or(o.full ? kFullSize : s.size());
  const Grid g = default_grid(s, grid_policy(o.grid, 200));
  const MefCurve data = empirical_mef_curve(s, g);
  const StallionCurve fit = stallion(d, reps, size, g, o.seed);
  io.csv([&](std::ostream& f) { write_columns_csv(f, g, {"e_data", "e_fit"}, {data.values, fit.curve.values}); });
  io.info() << "sup_deviation=" << format_number(sup_deviation(data, fit.curve)) << '\n';
  io.svg({{curve_series(data, "data emef"), curve_series(fit.curve, "fitted " + d.to_string())}, "Empirical vs fitted"});
}

void add_common(CLI::App* c, Options& o) {
  c->add_option("--svg", o.svg, "Write an SVG plot to this path");
  c->add_option("--csv", o.csv, "Write CSV here instead of stdout");
}

void add_data(CLI::App* c, Options& o) {
  c->add_option("--data", o.data, "Sample CSV (one value per line) or OHLCV CSV");
  c->add_option("--field", o.field, "OHLCV field: open|high|low|close|volume");
  c->add_flag("--log-returns", o.log_returns, "Use log-returns of the OHLCV field");
  c->add_option("--kind", o.kind, "Return convention: simple|gross");
  c->add_flag("--monthly", o.monthly, "Keep the last record of each month first");
}

void add_mc(CLI::App* c, Options& o) {
  c->add_option("--seed", o.seed, "Root seed");
  c->add_option("--reps", o.reps, "Replicates");
  c->add_option("--size", o.size, "Sample size per replicate");
  c->add_flag("--full", o.full, "Use 6000 replicates of size 4000");
}

void add_range(CLI::App* c, Options& o) {
  c->add_option("--u0", o.u0, "Lower threshold");
  c->add_option("--u1", o.u1, "Upper threshold");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Mean excess function analysis", "meanex"};
  app.require_subcommand(1);

  auto* emef = app.add_subcommand("emef", "Empirical mean excess function of a sample");
  add_data(emef, o);
  emef->add_option("--grid", o.grid, "Grid points or 'order-stats'");
  add_common(emef, o);

  auto* band = app.add_subcommand("band", "Uniform consistency band on [u0, u1]");
  add_data(band, o);
  band->add_option("--dist", o.dist, "Draw the sample from this law and use oracle inputs");
  band->add_option("--grid", o.grid, "Grid points or 'order-stats'");
  add_range(band, o);
  band->add_option("--A", o.A, "Universal constant A");
  band->add_option("--A1", o.A1, "Universal constant A1");
  band->add_option("--seed", o.seed, "Seed for --dist draws");
  band->add_option("--size", o.size, "Sample size for --dist draws");
  add_common(band, o);

  auto* st = app.add_subcommand("stallion", "Average emef over replicate samples");
  st->add_option("--dist", o.dist, "Distribution spec, e.g. exponential(lambda=2)")->required();
  st->add_option("--grid", o.grid, "Grid points");
  add_range(st, o);
  add_mc(st, o);
  add_common(st, o);

  auto* cov = app.add_subcommand("coverage", "Monte Carlo coverage of the oracle band");
  cov->add_option("--dist", o.dist, "Distribution spec")->required();
  add_range(cov, o);
  cov->add_option("--A", o.A, "Universal constant A");
  cov->add_option("--A1", o.A1, "Universal constant A1");
  cov->add_option("--eps", o.eps, "Nominal miss probability");
  cov->add_option("--grid", o.grid, "Grid points");
  add_mc(cov, o);
  add_common(cov, o);

  auto* fit = app.add_subcommand("fit-gpd", "Fit a GPD from the emef by least squares");
  add_data(fit, o);
  fit->add_option("--dist", o.dist, "Draw the sample from this law instead");
  fit->add_option("--grid", o.grid, "Grid points or 'order-stats' (default)");
  fit->add_option("--seed", o.seed, "Seed for --dist draws");
  fit->add_option("--size", o.size, "Sample size for --dist draws");
  add_common(fit, o);

  auto* fd = app.add_subcommand("fdelta", "Continuity statistic sup ((F(v) - F(v - d)) / sqrt(d))^2");
  fd->add_option("--dist", o.dist, "Distribution spec")->required();
  add_range(fd, o);
  fd->add_option("--deltas", o.deltas, "Decreasing positive deltas")->delimiter(',');
  add_common(fd, o);

  auto* gh = app.add_subcommand("gh", "Generalized hyperbolic density and sampling");
  gh->require_subcommand(1);
  auto* gh_pdf_cmd = gh->add_subcommand("pdf", "Density on a grid");
  gh_pdf_cmd->add_option("--dist", o.dist, "gh(...) or gig(...) spec")->required();
  gh_pdf_cmd->add_option("--grid", o.grid, "Grid points");
  add_range(gh_pdf_cmd, o);
  add_common(gh_pdf_cmd, o);
  auto* gh_sample_cmd = gh->add_subcommand("sample", "Random draws");
  gh_sample_cmd->add_option("--dist", o.dist, "gh(...) or gig(...) spec")->required();
  gh_sample_cmd->add_option("--seed", o.seed, "Root seed");
  gh_sample_cmd->add_option("--size", o.size, "Number of draws")->required();
  add_common(gh_sample_cmd, o);

  auto* ingest = app.add_subcommand("ingest", "OHLCV CSV to a return series");
  add_data(ingest, o);
  add_common(ingest, o);

  auto* cmp = app.add_subcommand("compare", "Overlay data emef and the stallion of a fitted law");
  add_data(cmp, o);
  cmp->add_option("--dist", o.dist, "Fitted distribution spec")->required();
  cmp->add_option("--grid", o.grid, "Grid points or 'order-stats'");
  add_mc(cmp, o);
  add_common(cmp, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Output io(o, out, err);
  try {
    if (emef->parsed()) cmd_emef(o, io);
    else if (band->parsed()) cmd_band(o, io);
    else if (st->parsed()) cmd_stallion(o, io);
    else if (cov->parsed()) cmd_coverage(o, io);
    else if (fit->parsed()) cmd_fit_gpd(o, io);
    else if (fd->parsed()) cmd_fdelta(o, io);
    else if (gh_pdf_cmd->parsed()) cmd_gh_pdf(o, io);
    else if (gh_sample_cmd->parsed()) cmd_gh_sample(o, io);
    else if (ingest->parsed()) cmd_ingest(o, io);
    else if (cmp->parsed()) cmd_compare(o, io);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    // Library failures (special-function domain or overflow) are numeric.
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace meanex::cli
