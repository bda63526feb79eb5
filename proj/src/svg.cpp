#include "qrnn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qrnn {
namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  double lo = 0.0, hi = 1.0;
  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

/// Round tick spacing to 1/2/5 times a power of ten.
std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  double step = std::pow(10.0, std::floor(std::log10(span / 5.0)));
  if (span / step > 10.0) step *= 2.0;
  if (span / step > 10.0) step *= 2.5;
  if (span / step > 10.0) step *= 2.0;
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * span;
       t += step)
    ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  return ticks;
}

std::vector<double> decade_ticks(double lo_log, double hi_log) {
  std::vector<double> ticks;
  for (double e = std::ceil(lo_log - 1e-9); e <= hi_log + 1e-9; e += 1.0)
    ticks.push_back(e);
  return ticks;
}

std::string decade_label(double exponent) {
  std::ostringstream os;
  os << "1e" << int(std::llround(exponent));
  return os.str();
}

}  // namespace

void emit_svg_plot(const std::vector<PlotSeries>& series,
                   const PlotOptions& options, const std::string& path) {
  if (series.empty())
    throw std::invalid_argument("emit_svg_plot: no series");
  for (const PlotSeries& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size())
      throw std::invalid_argument("emit_svg_plot: bad series " + s.label);
    if (options.log_y)
      for (double y : s.y)
        if (!(y > 0))
          throw std::invalid_argument(
              "emit_svg_plot: log scale needs positive y");
  }

  Range xr{series[0].x[0], series[0].x[0]};
  const double y0 = options.log_y ? std::log10(series[0].y[0]) : series[0].y[0];
  Range yr{y0, y0};
  for (const PlotSeries& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      xr.expand(s.x[i]);
      yr.expand(options.log_y ? std::log10(s.y[i]) : s.y[i]);
    }
  if (!std::isnan(options.boundary_x)) xr.expand(options.boundary_x);
  if (xr.hi - xr.lo < 1e-12) xr.hi = xr.lo + 1.0;
  if (yr.hi - yr.lo < 1e-12) yr.hi = yr.lo + 1.0;
  const double pad_y = 0.06 * (yr.hi - yr.lo);
  yr.lo -= pad_y;
  yr.hi += pad_y;

  const double ml = 72, mr = 16, mt = 40, mb = 52;
  const double pw = options.width - ml - mr;
  const double ph = options.height - mt - mb;
  const auto px = [&](double x) {
    return ml + pw * (x - xr.lo) / (xr.hi - xr.lo);
  };
  const auto py = [&](double y) {
    const double v = options.log_y ? std::log10(y) : y;
    return mt + ph * (1.0 - (v - yr.lo) / (yr.hi - yr.lo));
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
      << options.width << " " << options.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty())
    svg << "<text x=\"" << options.width / 2 << "\" y=\"24\" "
        << "text-anchor=\"middle\" font-size=\"16\" font-family=\"sans-serif\">"
        << escape_xml(options.title) << "</text>\n";

  // Axes frame.
  svg << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\""
      << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : linear_ticks(xr.lo, xr.hi)) {
    const double x = px(t);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(mt + ph) << "\" x2=\""
        << num(x) << "\" y2=\"" << num(mt + ph + 5)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(x) << "\" y=\"" << num(mt + ph + 18)
        << "\" text-anchor=\"middle\" font-size=\"11\" "
           "font-family=\"sans-serif\">"
        << num(t) << "</text>\n";
  }
  const std::vector<double> yticks =
      options.log_y ? decade_ticks(yr.lo, yr.hi) : linear_ticks(yr.lo, yr.hi);
  for (double t : yticks) {
    const double y = mt + ph * (1.0 - (t - yr.lo) / (yr.hi - yr.lo));
    svg << "<line x1=\"" << num(ml - 5) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(ml) << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"11\" "
           "font-family=\"sans-serif\">"
        << (options.log_y ? decade_label(t) : num(t)) << "</text>\n";
  }
  if (!options.x_label.empty())
    svg << "<text x=\"" << num(ml + pw / 2) << "\" y=\""
        << num(options.height - 12)
        << "\" text-anchor=\"middle\" font-size=\"13\" "
           "font-family=\"sans-serif\">"
        << escape_xml(options.x_label) << "</text>\n";
  if (!options.y_label.empty())
    svg << "<text x=\"16\" y=\"" << num(mt + ph / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" "
           "font-family=\"sans-serif\" transform=\"rotate(-90 16 "
        << num(mt + ph / 2) << ")\">" << escape_xml(options.y_label)
        << "</text>\n";

  if (!std::isnan(options.boundary_x)) {
    const double x = px(options.boundary_x);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(mt) << "\" x2=\""
        << num(x) << "\" y2=\"" << num(mt + ph)
        << "\" stroke=\"grey\" stroke-dasharray=\"6 4\"/>\n";
  }

  for (const PlotSeries& s : series) {
    if (s.points_only) {
      for (size_t i = 0; i < s.x.size(); ++i)
        svg << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\""
            << num(py(s.y[i])) << "\" r=\"3\" fill=\"" << s.color
            << "\" fill-opacity=\"0.7\"/>\n";
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.5\"";
      if (s.dashed) svg << " stroke-dasharray=\"5 3\"";
      svg << " points=\"";
      for (size_t i = 0; i < s.x.size(); ++i)
        svg << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      svg << "\"/>\n";
    }
  }

  // Legend in the top-right corner of the plot area.
  double ly = mt + 14;
  for (const PlotSeries& s : series) {
    const double lx = ml + pw - 160;
    svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << num(lx + 22) << "\" y2=\"" << num(ly - 4) << "\" stroke=\""
        << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"5 3\"" : "") << "/>\n"
        << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly)
        << "\" font-size=\"11\" font-family=\"sans-serif\">"
        << escape_xml(s.label) << "</text>\n";
    ly += 16;
  }

  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_svg_plot: cannot open " + path);
  out << svg.str();
  if (!out)
    throw std::runtime_error("emit_svg_plot: write failed for " + path);
}

}  // namespace qrnn
