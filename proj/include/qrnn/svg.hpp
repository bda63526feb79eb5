#pragma once

#include <limits>
#include <string>
#include <vector>

namespace qrnn {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool points_only = false;  // scatter markers instead of a polyline
  bool dashed = false;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;  // requires strictly positive y data
  // Vertical dashed marker (e.g. train/test boundary); NaN disables it.
  double boundary_x = std::numeric_limits<double>::quiet_NaN();
  int width = 880;
  int height = 520;
};

/// Standalone SVG line/scatter chart with axes, ticks and a legend.
/// Throws std::invalid_argument on empty input and std::runtime_error on
/// I/O failure.
void emit_svg_plot(const std::vector<PlotSeries>& series,
                   const PlotOptions& options, const std::string& path);

}  // namespace qrnn
