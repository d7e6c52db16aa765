#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meanex/band.hpp"
#include "meanex/gof.hpp"
#include "meanex/mef.hpp"
#include "meanex/montecarlo.hpp"

namespace meanex {

/// %.12g, or "nan" for an undefined value.
[[nodiscard]] std::string format_number(std::optional<double> v);

/// Header `u,e`.
void write_curve_csv(std::ostream& out, const MefCurve& curve);
/// Header `u,e,lower,upper`.
void write_band_csv(std::ostream& out, const Band& band);
/// Header `u,<names...>`; every column must match the grid length.
void write_columns_csv(std::ostream& out, const Grid& grid, const std::vector<std::string>& names,
                       const std::vector<std::vector<std::optional<double>>>& columns);
/// Header `xi_hat,beta_hat,a_hat,b_hat,r2` and one line.
void write_fit_csv(std::ostream& out, const GpdFit& fit);
/// `# name=...,seed=...,reps=...`, then `metric,value` rows.
void write_report_csv(std::ostream& out, const ExperimentReport& report);

/// One observation per line (first comma-separated field). A first line that
/// does not parse as a number is taken as a header. Throws InputError naming
/// the line for unparsable values, and when the file is missing or empty.
[[nodiscard]] Sample read_sample_csv(std::istream& in);
[[nodiscard]] Sample read_sample_file(const std::string& path);

}  // namespace meanex
