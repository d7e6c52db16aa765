#include "meanex/ohlcv.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "meanex/error.hpp"

namespace meanex {
namespace {

constexpr std::array<std::string_view, 6> kColumns = {"date", "open", "high", "low", "close", "volume"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) return out;
    line.remove_prefix(comma + 1);
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string row_context(std::size_t line) { return "row " + std::to_string(line) + ": "; }

std::chrono::year_month_day parse_date(std::string_view s, std::size_t line) {
  const bool shape = s.size() == 10 && s[4] == '-' && s[7] == '-' &&
                     std::all_of(s.begin(), s.end(), [](char c) { return c == '-' || std::isdigit(static_cast<unsigned char>(c)); });
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  if (shape) {
    std::from_chars(s.data(), s.data() + 4, y);
    std::from_chars(s.data() + 5, s.data() + 7, m);
    std::from_chars(s.data() + 8, s.data() + 10, d);
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!shape || !ymd.ok()) throw InputError(row_context(line) + "bad date '" + std::string(s) + "'");
  return ymd;
}

double parse_value(std::string_view s, std::string_view column, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InputError(row_context(line) + "bad " + std::string(column) + " value '" + std::string(s) + "'");
  }
  return v;
}

std::string format_date(const std::chrono::year_month_day& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

double field_value(const OhlcvRecord& r, PriceField f) {
  switch (f) {
    case PriceField::kOpen: return r.open;
    case PriceField::kHigh: return r.high;
    case PriceField::kLow: return r.low;
    case PriceField::kClose: return r.close;
    case PriceField::kVolume: return r.volume;
  }
  return r.close;
}

std::vector<double> ratios(const PriceSeries& series, PriceField field) {
  const auto& rs = series.records;
  if (rs.size() < 2) throw InputError("returns need at least 2 records");
  std::vector<double> out;
  out.reserve(rs.size() - 1);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (!(field_value(rs[i], field) > 0.0)) {
      throw InputError("nonpositive value on " + format_date(rs[i].date) + "; returns need positive prices");
    }
  }
  for (std::size_t i = 1; i < rs.size(); ++i) out.push_back(field_value(rs[i], field) / field_value(rs[i - 1], field));
  return out;
}

}  // namespace

PriceField parse_field(std::string_view name) {
  const std::string n = lower(name);
  if (n == "open") return PriceField::kOpen;
  if (n == "high") return PriceField::kHigh;
  if (n == "low") return PriceField::kLow;
  if (n == "close") return PriceField::kClose;
  if (n == "volume") return PriceField::kVolume;
  throw InputError("unknown field '" + std::string(name) + "' (open|high|low|close|volume)");
}

ReturnKind parse_return_kind(std::string_view name) {
  if (name == "simple") return ReturnKind::kSimple;
  if (name == "gross") return ReturnKind::kGross;
  throw InputError("unknown return kind '" + std::string(name) + "' (simple|gross)");
}

PriceSeries parse_ohlcv_csv(std::istream& in, std::string symbol) {
  std::string line;
  std::size_t lineno = 0;
  std::array<std::size_t, kColumns.size()> index{};
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      const auto it = std::find_if(cells.begin(), cells.end(), [&](std::string_view h) { return lower(h) == kColumns[c]; });
      if (it == cells.end()) throw InputError("header is missing column '" + std::string(kColumns[c]) + "'");
      index[c] = static_cast<std::size_t>(it - cells.begin());
    }
    have_header = true;
  }
  if (!have_header) throw InputError("empty input: expected a header line");
  const std::size_t width = *std::max_element(index.begin(), index.end()) + 1;

  PriceSeries series;
  series.symbol = std::move(symbol);
  std::vector<std::size_t> lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() < width) throw InputError(row_context(lineno) + "expected at least " + std::to_string(width) + " columns");
    OhlcvRecord r;
    r.date = parse_date(cells[index[0]], lineno);
    r.open = parse_value(cells[index[1]], "open", lineno);
    r.high = parse_value(cells[index[2]], "high", lineno);
    r.low = parse_value(cells[index[3]], "low", lineno);
    r.close = parse_value(cells[index[4]], "close", lineno);
    r.volume = parse_value(cells[index[5]], "volume", lineno);
    if (!(r.open > 0.0 && r.high > 0.0 && r.low > 0.0 && r.close > 0.0)) {
      throw InputError(row_context(lineno) + "prices must be positive");
    }
    if (r.volume < 0.0) throw InputError(row_context(lineno) + "volume must be nonnegative");
    if (!(r.low <= std::min(r.open, r.close) && std::max(r.open, r.close) <= r.high)) {
      throw InputError(row_context(lineno) + "low/high do not bracket open and close");
    }
    series.records.push_back(r);
    lines.push_back(lineno);
  }
  if (series.records.empty()) throw InputError("no records");

  std::vector<std::size_t> order(series.records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return series.records[a].date < series.records[b].date; });
  std::vector<OhlcvRecord> sorted;
  sorted.reserve(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && series.records[order[k]].date == series.records[order[k - 1]].date) {
      throw InputError(row_context(lines[order[k]]) + "duplicate date " + format_date(series.records[order[k]].date));
    }
    sorted.push_back(series.records[order[k]]);
  }
  series.records = std::move(sorted);
  return series;
}

PriceSeries parse_ohlcv_csv(std::string_view text, std::string symbol) {
  std::istringstream in{std::string(text)};
  return parse_ohlcv_csv(in, std::move(symbol));
}

PriceSeries read_ohlcv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::string symbol = path;
  if (const auto slash = symbol.find_last_of("/\\"); slash != std::string::npos) symbol.erase(0, slash + 1);
  if (const auto dot = symbol.rfind('.'); dot != std::string::npos) symbol.erase(dot);
  return parse_ohlcv_csv(in, symbol);
}

void serialize(const PriceSeries& series, std::ostream& out) {
  out << "date,open,high,low,close,volume\n";
  char buf[256];
  for (const auto& r : series.records) {
    std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,%.12g,%.12g,%.12g\n", format_date(r.date).c_str(), r.open, r.high,
                  r.low, r.close, r.volume);
    out << buf;
  }
}

std::string serialize(const PriceSeries& series) {
  std::ostringstream os;
  serialize(series, os);
  return os.str();
}

std::vector<double> return_values(const PriceSeries& series, PriceField field, ReturnKind kind) {
  std::vector<double> out;
  const auto& rs = series.records;
  const std::vector<double> g = ratios(series, field);
  if (kind == ReturnKind::kGross) return g;
  out.reserve(g.size());
  for (std::size_t i = 1; i < rs.size(); ++i) {
    const double prev = field_value(rs[i - 1], field);
    out.push_back((field_value(rs[i], field) - prev) / prev);
  }
  return out;
}

std::vector<double> log_return_values(const PriceSeries& series, PriceField field) {
  std::vector<double> out = ratios(series, field);
  for (auto& x : out) x = std::log(x);
  return out;
}

Sample returns(const PriceSeries& series, PriceField field, ReturnKind kind) {
  return Sample(return_values(series, field, kind));
}

Sample log_returns(const PriceSeries& series, PriceField field) { return Sample(log_return_values(series, field)); }

PriceSeries monthly_last(const PriceSeries& series) {
  PriceSeries out{{}, series.symbol};
  for (std::size_t i = 0; i < series.records.size(); ++i) {
    const auto& r = series.records[i];
    const bool last = i + 1 == series.records.size() ||
                      std::chrono::year_month{r.date.year(), r.date.month()} !=
                          std::chrono::year_month{series.records[i + 1].date.year(), series.records[i + 1].date.month()};
    if (last) out.records.push_back(r);
  }
  return out;
}

}  // namespace meanex
