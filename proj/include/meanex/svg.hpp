#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meanex/band.hpp"
#include "meanex/mef.hpp"

namespace meanex {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<std::optional<double>> y;  // gaps where undefined
  bool dashed = false;
};

struct PlotSpec {
  std::vector<PlotSeries> series;
  std::string title;
  std::string x_label = "threshold u";
  std::string y_label = "mean excess e(u)";
  int width = 720;
  int height = 480;
};

[[nodiscard]] PlotSeries curve_series(const MefCurve& curve, std::string label);
/// The emef plus dashed lower and upper envelopes: three series.
[[nodiscard]] std::vector<PlotSeries> band_series(const Band& band, const std::string& label);

/// Standalone SVG document: axes with tick labels, axis labels, title, one
/// <path> and one legend entry per series. Throws InputError without series
/// or with nonpositive dimensions.
[[nodiscard]] std::string render_svg(const PlotSpec& spec);

}  // namespace meanex
