#pragma once

// Minimal self-contained SVG scatter plots: one axes box, point series and
// overlay curves, with a small legend. No external dependencies.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace monocone {

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::array<double, 2>> points;
};

struct SvgCurve {
  std::string label;
  std::string color;
  std::vector<std::array<double, 2>> points;  // polyline vertices
};

namespace detail {

inline std::string svg_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline std::string tick_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace detail

inline void write_scatter_svg(const std::string& path, const std::string& title,
                              const std::string& x_label, const std::string& y_label,
                              const std::vector<SvgSeries>& series,
                              const std::vector<SvgCurve>& curves) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  const auto grow = [&](const std::array<double, 2>& p) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  };
  for (const SvgSeries& s : series)
    for (const auto& p : s.points) grow(p);
  for (const SvgCurve& c : curves)
    for (const auto& p : c.points) grow(p);
  if (xmin > xmax) { xmin = 0.0; xmax = 1.0; }
  if (ymin > ymax) { ymin = 0.0; ymax = 1.0; }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
  const double xpad = 0.04 * (xmax - xmin);
  const double ypad = 0.04 * (ymax - ymin);
  xmin -= xpad; xmax += xpad;
  ymin -= ypad; ymax += ypad;

  constexpr double kW = 760.0, kH = 560.0;
  constexpr double kLeft = 72.0, kRight = 740.0, kTop = 44.0, kBottom = 506.0;
  const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft); };
  const auto py = [&](double y) { return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  using detail::svg_num;
  using detail::tick_num;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
  out << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  constexpr int kTicks = 6;
  for (int k = 0; k <= kTicks; ++k) {
    const double fx = xmin + (xmax - xmin) * k / kTicks;
    const double gx = px(fx);
    out << "<line x1=\"" << svg_num(gx) << "\" y1=\"" << kTop << "\" x2=\"" << svg_num(gx)
        << "\" y2=\"" << kBottom << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << svg_num(gx) << "\" y=\"" << kBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_num(fx) << "</text>\n";
    const double fy = ymin + (ymax - ymin) * k / kTicks;
    const double gy = py(fy);
    out << "<line x1=\"" << kLeft << "\" y1=\"" << svg_num(gy) << "\" x2=\"" << kRight
        << "\" y2=\"" << svg_num(gy) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << svg_num(gy + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick_num(fy)
        << "</text>\n";
  }
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kRight - kLeft
      << "\" height=\"" << kBottom - kTop << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << (kTop + kBottom) / 2 << ")\">" << y_label << "</text>\n";

  for (const SvgSeries& s : series) {
    out << "<g fill=\"" << s.color << "\" fill-opacity=\"0.5\">\n";
    for (const auto& p : s.points)
      out << "<circle cx=\"" << svg_num(px(p[0])) << "\" cy=\"" << svg_num(py(p[1]))
          << "\" r=\"1.4\"/>\n";
    out << "</g>\n";
  }
  for (const SvgCurve& c : curves) {
    out << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& p : c.points) out << svg_num(px(p[0])) << ',' << svg_num(py(p[1])) << ' ';
    out << "\"/>\n";
  }

  double ly = kTop + 16.0;
  for (const SvgSeries& s : series) {
    out << "<circle cx=\"" << kRight - 150 << "\" cy=\"" << svg_num(ly - 4)
        << "\" r=\"4\" fill=\"" << s.color << "\"/>\n";
    out << "<text x=\"" << kRight - 140 << "\" y=\"" << svg_num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    ly += 18.0;
  }
  for (const SvgCurve& c : curves) {
    if (c.label.empty()) continue;
    out << "<line x1=\"" << kRight - 158 << "\" y1=\"" << svg_num(ly - 4) << "\" x2=\""
        << kRight - 142 << "\" y2=\"" << svg_num(ly - 4) << "\" stroke=\"" << c.color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kRight - 140 << "\" y=\"" << svg_num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << c.label << "</text>\n";
    ly += 18.0;
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace monocone
