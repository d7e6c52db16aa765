#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "meanex/sample.hpp"

namespace meanex {

struct OhlcvRecord {
  std::chrono::year_month_day date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double volume = 0.0;

  friend bool operator==(const OhlcvRecord&, const OhlcvRecord&) = default;
};

struct PriceSeries {
  std::vector<OhlcvRecord> records;  // strictly increasing dates
  std::string symbol;

  friend bool operator==(const PriceSeries&, const PriceSeries&) = default;
};

enum class PriceField { kOpen, kHigh, kLow, kClose, kVolume };
enum class ReturnKind { kSimple, kGross };

/// Throws InputError for an unknown name.
[[nodiscard]] PriceField parse_field(std::string_view name);
[[nodiscard]] ReturnKind parse_return_kind(std::string_view name);

/// Reads `date,open,high,low,close,volume` (columns located by header name,
/// extra columns ignored; LF or CRLF). Dates must be ISO-8601 YYYY-MM-DD.
/// Rows are sorted by date. Throws InputError naming the row for missing
/// columns, unparsable numbers, duplicate dates, nonpositive prices,
/// negative volume or low/high values that do not bracket open and close,
/// and "no records" for an empty body.
[[nodiscard]] PriceSeries parse_ohlcv_csv(std::istream& in, std::string symbol = {});
[[nodiscard]] PriceSeries parse_ohlcv_csv(std::string_view text, std::string symbol = {});
[[nodiscard]] PriceSeries read_ohlcv_file(const std::string& path);

/// Same header as the input, numbers in %.12g.
void serialize(const PriceSeries& series, std::ostream& out);
[[nodiscard]] std::string serialize(const PriceSeries& series);

/// Returns in date order. simple: p_t / p_{t-1} - 1; gross: p_t / p_{t-1}. Throws InputError with
/// fewer than 2 records or a nonpositive value in the field.
[[nodiscard]] std::vector<double> return_values(const PriceSeries& series, PriceField field,
                                                ReturnKind kind = ReturnKind::kGross);
/// log(p_t / p_{t-1}) in date order.
[[nodiscard]] std::vector<double> log_return_values(const PriceSeries& series, PriceField field);

/// The same values as a Sample (sorted).
[[nodiscard]] Sample returns(const PriceSeries& series, PriceField field, ReturnKind kind = ReturnKind::kGross);
[[nodiscard]] Sample log_returns(const PriceSeries& series, PriceField field);

/// Keeps the last record of each calendar month.
[[nodiscard]] PriceSeries monthly_last(const PriceSeries& series);

}  // namespace meanex
