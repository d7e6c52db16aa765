#include "meanex/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "meanex/error.hpp"

namespace meanex {
namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

}  // namespace

PlotSeries curve_series(const MefCurve& curve, std::string label) {
  const auto pts = curve.grid.points();
  return PlotSeries{std::move(label), std::vector<double>(pts.begin(), pts.end()), curve.values, false};
}

std::vector<PlotSeries> band_series(const Band& band, const std::string& label) {
  std::vector<PlotSeries> out;
  out.push_back(curve_series(band.curve, label));
  const auto pts = band.curve.grid.points();
  const std::vector<double> x(pts.begin(), pts.end());
  out.push_back({label + " lower", x, {band.lower.begin(), band.lower.end()}, true});
  out.push_back({label + " upper", x, {band.upper.begin(), band.upper.end()}, true});
  return out;
}

std::string render_svg(const PlotSpec& spec) {
  if (spec.series.empty()) throw InputError("plot needs at least one series");
  if (spec.width <= 0 || spec.height <= 0) throw InputError("plot dimensions must be positive");

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!s.y[i] || !std::isfinite(*s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, *s.y[i]);
      ymax = std::max(ymax, *s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double left = 70.0;
  const double right = spec.width - 170.0;
  const double top = 40.0;
  const double bottom = spec.height - 55.0;
  const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  const auto py = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
     << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << fmt(spec.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(spec.title) << "</text>\n";

  // Axes and ticks.
  os << "<g stroke=\"black\" fill=\"none\">\n"
     << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(right) << "\" y2=\"" << fmt(bottom)
     << "\"/>\n"
     << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left) << "\" y2=\"" << fmt(bottom)
     << "\"/>\n</g>\n";
  os << "<g fill=\"black\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 5.0;
    const double yv = ymin + (ymax - ymin) * k / 5.0;
    os << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(bottom + 16) << "\" text-anchor=\"middle\">"
       << tick_label(xv) << "</text>\n";
    os << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(py(yv) + 4) << "\" text-anchor=\"end\">" << tick_label(yv)
       << "</text>\n";
  }
  os << "<text class=\"x-label\" x=\"" << fmt((left + right) / 2) << "\" y=\"" << fmt(spec.height - 12.0)
     << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n"
     << "<text class=\"y-label\" x=\"16\" y=\"" << fmt((top + bottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << fmt((top + bottom) / 2) << ")\">" << escape(spec.y_label) << "</text>\n</g>\n";

  // One path per series; undefined points break the line.
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const auto& ser = spec.series[s];
    std::string d;
    bool pen = false;
    for (std::size_t i = 0; i < ser.x.size() && i < ser.y.size(); ++i) {
      if (!ser.y[i] || !std::isfinite(*ser.y[i])) {
        pen = false;
        continue;
      }
      d += pen ? " L" : (d.empty() ? "M" : " M");
      d += fmt(px(ser.x[i])) + ',' + fmt(py(*ser.y[i]));
      pen = true;
    }
    const char* colour = kPalette[s % kPalette.size()];
    os << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\""
       << (ser.dashed ? " stroke-dasharray=\"5,3\"" : "") << "/>\n";
  }

  // Legend.
  os << "<g class=\"legend\">\n";
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const double y = top + 10.0 + 18.0 * static_cast<double>(s);
    const char* colour = kPalette[s % kPalette.size()];
    os << "<line x1=\"" << fmt(right + 12) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(right + 36) << "\" y2=\""
       << fmt(y) << "\" stroke=\"" << colour << "\" stroke-width=\"1.5\""
       << (spec.series[s].dashed ? " stroke-dasharray=\"5,3\"" : "") << "/>\n"
       << "<text x=\"" << fmt(right + 42) << "\" y=\"" << fmt(y + 4) << "\">" << escape(spec.series[s].label)
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace meanex
