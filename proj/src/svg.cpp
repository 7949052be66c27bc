#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string_view>

#include "airylab/io.hpp"

namespace airylab {
namespace {

constexpr std::array<std::string_view, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                                   "#9467bd", "#ff7f0e", "#17becf"};

std::string fixed(double v, int digits) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, r.ptr);
}

std::string tick_label(double v, double step) {
  if (std::abs(v) < 1e-12 * step) v = 0.0;
  const double mag = std::max(std::abs(v), step);
  if (mag >= 1e5 || mag < 1e-3) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 2);
    return std::string(buf, r.ptr);
  }
  const int digits = std::max(0, static_cast<int>(std::ceil(-std::log10(step))));
  return fixed(v, digits);
}

std::string escape(std::string_view s) {
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

// Round step of roughly (hi - lo) / target.
double nice_step(double lo, double hi, int target) {
  const double raw = (hi - lo) / target;
  const double p = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / p;
  const double m = f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0;
  return m * p;
}

void pad_range(double& lo, double& hi) {
  if (hi == lo) {
    const double d = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
    lo -= d;
    hi += d;
  }
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& o) {
  if (series.empty()) throw std::invalid_argument("render_svg: no series to plot");
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& s : series) {
    if (s.x.empty()) throw std::invalid_argument("render_svg: series '" + s.label + "' is empty");
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("render_svg: series '" + s.label + "' has mismatched lengths");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        throw std::invalid_argument("render_svg: series '" + s.label + "' has non-finite samples");
      }
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  pad_range(xlo, xhi);
  pad_range(ylo, yhi);

  const double left = 80, right = 160, top = 40, bottom = 56;
  const double pw = o.width - left - right, ph = o.height - top - bottom;
  auto sx = [&](double x) { return left + (x - xlo) / (xhi - xlo) * pw; };
  auto sy = [&](double y) { return top + (yhi - y) / (yhi - ylo) * ph; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(o.width) +
       "\" height=\"" + std::to_string(o.height) + "\" viewBox=\"0 0 " + std::to_string(o.width) +
       " " + std::to_string(o.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!o.title.empty()) {
    s += "<text x=\"" + fixed(left + pw / 2, 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(o.title) + "</text>\n";
  }

  // Axes and ticks.
  s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<rect x=\"" + fixed(left, 2) + "\" y=\"" + fixed(top, 2) + "\" width=\"" + fixed(pw, 2) +
       "\" height=\"" + fixed(ph, 2) + "\"/>\n";
  s += "</g>\n<g font-size=\"11\">\n";
  const double xs = nice_step(xlo, xhi, 6);
  for (double v = std::ceil(xlo / xs) * xs; v <= xhi + 1e-9 * xs; v += xs) {
    const std::string px = fixed(sx(v), 2);
    s += "<line x1=\"" + px + "\" y1=\"" + fixed(top + ph, 2) + "\" x2=\"" + px + "\" y2=\"" +
         fixed(top + ph + 5, 2) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + px + "\" y=\"" + fixed(top + ph + 18, 2) + "\" text-anchor=\"middle\">" +
         tick_label(v, xs) + "</text>\n";
  }
  const double ys = nice_step(ylo, yhi, 5);
  for (double v = std::ceil(ylo / ys) * ys; v <= yhi + 1e-9 * ys; v += ys) {
    const std::string py = fixed(sy(v), 2);
    s += "<line x1=\"" + fixed(left - 5, 2) + "\" y1=\"" + py + "\" x2=\"" + fixed(left, 2) +
         "\" y2=\"" + py + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fixed(left - 8, 2) + "\" y=\"" + fixed(sy(v) + 4, 2) +
         "\" text-anchor=\"end\">" + tick_label(v, ys) + "</text>\n";
  }
  s += "</g>\n";
  s += "<text x=\"" + fixed(left + pw / 2, 2) + "\" y=\"" + fixed(o.height - 12.0, 2) +
       "\" text-anchor=\"middle\">" + escape(o.x_label) + "</text>\n";
  if (!o.y_label.empty()) {
    s += "<text x=\"16\" y=\"" + fixed(top + ph / 2, 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fixed(top + ph / 2, 2) + ")\">" + escape(o.y_label) + "</text>\n";
  }

  // Data.
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& sr = series[i];
    const std::string_view colour = kPalette[i % kPalette.size()];
    s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < sr.x.size(); ++k) {
      if (k) s += ' ';
      s += fixed(sx(sr.x[k]), 2) + "," + fixed(sy(sr.y[k]), 2);
    }
    s += "\"/>\n";
  }

  // Legend.
  s += "<g font-size=\"12\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double ly = top + 14 + 18.0 * static_cast<double>(i);
    const double lx = left + pw + 12;
    s += "<line x1=\"" + fixed(lx, 2) + "\" y1=\"" + fixed(ly, 2) + "\" x2=\"" + fixed(lx + 24, 2) +
         "\" y2=\"" + fixed(ly, 2) + "\" stroke=\"" + std::string(kPalette[i % kPalette.size()]) +
         "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + fixed(lx + 30, 2) + "\" y=\"" + fixed(ly + 4, 2) + "\">" +
         escape(series[i].label) + "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

void write_svg(const std::vector<PlotSeries>& series, const std::filesystem::path& path,
               const PlotOptions& options) {
  write_file_atomic(path, render_svg(series, options));
}

}  // namespace airylab
