#include "meanex/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "meanex/error.hpp"

namespace meanex {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string format_number(std::optional<double> v) {
  if (!v || std::isnan(*v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", *v);
  return buf;
}

void write_columns_csv(std::ostream& out, const Grid& grid, const std::vector<std::string>& names,
                       const std::vector<std::vector<std::optional<double>>>& columns) {
  if (names.size() != columns.size()) throw InputError("column names and data differ in count");
  for (const auto& c : columns) {
    if (c.size() != grid.size()) throw InputError("column length differs from the grid");
  }
  out << 'u';
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_number(grid[i]);
    for (const auto& c : columns) out << ',' << format_number(c[i]);
    out << '\n';
  }
}

void write_curve_csv(std::ostream& out, const MefCurve& curve) {
  write_columns_csv(out, curve.grid, {"e"}, {curve.values});
}

void write_band_csv(std::ostream& out, const Band& band) {
  std::vector<std::optional<double>> lo(band.lower.begin(), band.lower.end());
  std::vector<std::optional<double>> hi(band.upper.begin(), band.upper.end());
  write_columns_csv(out, band.curve.grid, {"e", "lower", "upper"}, {band.curve.values, lo, hi});
}

void write_fit_csv(std::ostream& out, const GpdFit& fit) {
  out << "xi_hat,beta_hat,a_hat,b_hat,r2\n"
      << format_number(fit.params.xi) << ',' << format_number(fit.params.beta) << ',' << format_number(fit.ols.a_hat)
      << ',' << format_number(fit.ols.b_hat) << ',' << format_number(fit.ols.r2) << '\n';
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << "# name=" << report.name << ",seed=" << report.seed << ",reps=" << report.replicate_count << '\n';
  out << "metric,value\n";
  for (const auto& [k, v] : report.metrics) out << k << ',' << format_number(v) << '\n';
}

Sample read_sample_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view cell = trim(line);
    if (cell.empty() || cell.front() == '#') continue;
    cell = trim(cell.substr(0, cell.find(',')));
    const auto v = parse_double(cell);
    if (!v) {
      if (first) {
        first = false;
        continue;
      }
      throw InputError("line " + std::to_string(lineno) + ": bad value '" + std::string(cell) + "'");
    }
    first = false;
    if (!std::isfinite(*v)) throw InputError("line " + std::to_string(lineno) + ": value is not finite");
    values.push_back(*v);
  }
  if (values.empty()) throw InputError("no observations in input");
  return Sample(std::move(values));
}

Sample read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_sample_csv(in);
}

}  // namespace meanex
