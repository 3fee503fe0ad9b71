#pragma once

// Minimal SVG emission for a histogram with a density overlay.

#include <algorithm>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>

#include "hdvar/histogram.hpp"

namespace hdvar {

struct SvgPlotStyle {
  double width = 640.0;
  double height = 420.0;
  double margin_left = 60.0;
  double margin_right = 20.0;
  double margin_top = 40.0;
  double margin_bottom = 60.0;
  std::string bar_fill = "#9ecae1";
  std::string bar_stroke = "#3182bd";
  std::string curve_stroke = "#d62728";
  std::string title;
  std::string x_label;
};

namespace detail {
inline std::string fmt_num(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
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
}  // namespace detail

/// Bars are drawn on the density scale so the KDE curve (evaluated on a fine
/// grid from `values`) shares the y axis.
inline std::string histogram_svg(const Histogram& h, std::span<const double> values,
                                 const SvgPlotStyle& style = {}) {
  using detail::fmt_num;
  const double x0 = style.margin_left;
  const double x1 = style.width - style.margin_right;
  const double y0 = style.height - style.margin_bottom;  // baseline
  const double y1 = style.margin_top;
  const double lo = h.edges.front(), hi = h.edges.back();

  constexpr std::size_t kCurvePoints = 200;
  std::vector<double> cx(kCurvePoints), cy(kCurvePoints);
  double ymax = 0.0;
  for (double d : h.density) ymax = std::max(ymax, d);
  for (std::size_t k = 0; k < kCurvePoints; ++k) {
    cx[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kCurvePoints - 1);
    cy[k] = values.empty() ? 0.0 : gaussian_kde(values, h.bandwidth, cx[k]);
    ymax = std::max(ymax, cy[k]);
  }
  if (!(ymax > 0.0)) ymax = 1.0;
  ymax *= 1.05;

  auto sx = [&](double v) { return x0 + (v - lo) / (hi - lo) * (x1 - x0); };
  auto sy = [&](double v) { return y0 - v / ymax * (y0 - y1); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_num(style.width, 0)
     << "\" height=\"" << fmt_num(style.height, 0) << "\" viewBox=\"0 0 "
     << fmt_num(style.width, 0) << ' ' << fmt_num(style.height, 0) << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!style.title.empty())
    os << "<text x=\"" << fmt_num(style.width / 2, 1) << "\" y=\"22\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"14\">" << detail::xml_escape(style.title)
       << "</text>\n";

  os << "<g id=\"bars\" fill=\"" << style.bar_fill << "\" stroke=\"" << style.bar_stroke
     << "\" stroke-width=\"0.8\">\n";
  for (std::size_t k = 0; k < h.bins(); ++k) {
    const double bx = sx(h.edges[k]);
    const double bw = sx(h.edges[k + 1]) - bx;
    const double top = sy(h.density[k]);
    os << "<rect x=\"" << fmt_num(bx, 2) << "\" y=\"" << fmt_num(top, 2) << "\" width=\""
       << fmt_num(bw, 2) << "\" height=\"" << fmt_num(y0 - top, 2) << "\"/>\n";
  }
  os << "</g>\n";

  os << "<path id=\"density\" fill=\"none\" stroke=\"" << style.curve_stroke
     << "\" stroke-width=\"2\" d=\"";
  for (std::size_t k = 0; k < kCurvePoints; ++k)
    os << (k == 0 ? 'M' : 'L') << fmt_num(sx(cx[k]), 2) << ',' << fmt_num(sy(cy[k]), 2) << ' ';
  os << "\"/>\n";

  // Axes.
  os << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << fmt_num(x0, 2) << "\" y1=\"" << fmt_num(y0, 2) << "\" x2=\""
     << fmt_num(x1, 2) << "\" y2=\"" << fmt_num(y0, 2) << "\"/>\n"
     << "<line x1=\"" << fmt_num(x0, 2) << "\" y1=\"" << fmt_num(y0, 2) << "\" x2=\""
     << fmt_num(x0, 2) << "\" y2=\"" << fmt_num(y1, 2) << "\"/>\n";
  const std::size_t step = std::max<std::size_t>(1, h.bins() / 6);
  for (std::size_t k = 0; k <= h.bins(); k += step)
    os << "<line x1=\"" << fmt_num(sx(h.edges[k]), 2) << "\" y1=\"" << fmt_num(y0, 2)
       << "\" x2=\"" << fmt_num(sx(h.edges[k]), 2) << "\" y2=\"" << fmt_num(y0 + 5, 2)
       << "\"/>\n";
  os << "</g>\n<g id=\"labels\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t k = 0; k <= h.bins(); k += step)
    os << "<text x=\"" << fmt_num(sx(h.edges[k]), 2) << "\" y=\"" << fmt_num(y0 + 18, 2)
       << "\" text-anchor=\"middle\">" << fmt_num(h.edges[k], 3) << "</text>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = ymax * t / 4.0;
    os << "<text x=\"" << fmt_num(x0 - 6, 2) << "\" y=\"" << fmt_num(sy(v) + 4, 2)
       << "\" text-anchor=\"end\">" << fmt_num(v, 1) << "</text>\n";
  }
  if (!style.x_label.empty())
    os << "<text x=\"" << fmt_num((x0 + x1) / 2, 2) << "\" y=\"" << fmt_num(style.height - 15, 2)
       << "\" text-anchor=\"middle\">" << detail::xml_escape(style.x_label) << "</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace hdvar
