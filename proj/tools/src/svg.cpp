#include "vcpoint/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vcpoint::harness {

namespace {

constexpr std::size_t kMaxPoints = 1500;

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string tick_label(double v) {
  if (v == 0.0) return "0";
  const double a = std::abs(v);
  if (a >= 1e4 || a < 1e-3) return fmt(v, "%.0e");
  return fmt(v, "%g");
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return !(lo <= hi); }
};

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double nice = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return nice * mag;
}

Range padded_linear(Range r) {
  if (r.empty()) return {0.0, 1.0};
  if (r.hi - r.lo <= 1e-300) {
    const double pad = r.lo == 0.0 ? 1.0 : 0.1 * std::abs(r.lo);
    return {r.lo - pad, r.hi + pad};
  }
  const double pad = 0.05 * (r.hi - r.lo);
  return {r.lo - pad, r.hi + pad};
}

std::vector<double> linear_ticks(const Range& r) {
  const double step = nice_step(r.hi - r.lo);
  std::vector<double> ticks;
  for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string LinePlot::render(int width, int height) const {
  const double left = 80.0;
  const double right = 170.0;
  const double top = 40.0;
  const double bottom = 55.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  const auto transform_y = [&](double y) { return log_y ? std::log10(std::max(std::abs(y), log_floor)) : y; };

  Range xr;
  Range yr;
  for (const Series& s : series) {
    for (double x : s.x) xr.include(x);
    for (double y : s.y) yr.include(transform_y(y));
  }
  for (const ReferenceLine& r : references) yr.include(transform_y(r.y));
  if (xr.empty()) xr = {0.0, 1.0};
  if (xr.hi == xr.lo) xr.hi = xr.lo + 1.0;

  std::vector<double> y_ticks;
  if (log_y) {
    if (yr.empty()) yr = {0.0, 1.0};
    yr.lo = std::floor(yr.lo);
    yr.hi = std::ceil(yr.hi);
    if (yr.hi == yr.lo) yr.hi += 1.0;
    const double stride = std::max(1.0, std::ceil((yr.hi - yr.lo) / 8.0));
    for (double d = yr.lo; d <= yr.hi + 1e-9; d += stride) y_ticks.push_back(d);
  } else {
    yr = padded_linear(yr);
    y_ticks = linear_ticks(yr);
  }
  const std::vector<double> x_ticks = linear_ticks(xr);

  const auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto py = [&](double ty) { return top + (1.0 - (ty - yr.lo) / (yr.hi - yr.lo)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fmt(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";

  for (double t : x_ticks) {
    const std::string x = fmt(px(t));
    svg << "<line x1=\"" << x << "\" y1=\"" << fmt(top) << "\" x2=\"" << x << "\" y2=\"" << fmt(top + plot_h)
        << "\" stroke=\"#e5e5e5\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << fmt(top + plot_h + 16) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  for (double t : y_ticks) {
    const std::string y = fmt(py(t));
    svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << y << "\" x2=\"" << fmt(left + plot_w) << "\" y2=\"" << y
        << "\" stroke=\"#e5e5e5\"/>\n";
    const std::string label = log_y ? "1e" + fmt(t, "%.0f") : tick_label(t);
    svg << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(py(t) + 4) << "\" text-anchor=\"end\">" << label
        << "</text>\n";
  }
  svg << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(plot_w) << "\" height=\""
      << fmt(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (const ReferenceLine& r : references) {
    const std::string y = fmt(py(transform_y(r.y)));
    svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << y << "\" x2=\"" << fmt(left + plot_w) << "\" y2=\"" << y
        << "\" stroke=\"#555\" stroke-dasharray=\"6 4\"/>\n";
    if (!r.label.empty()) {
      svg << "<text x=\"" << fmt(left + plot_w - 4) << "\" y=\"" << fmt(py(transform_y(r.y)) - 4)
          << "\" text-anchor=\"end\" fill=\"#555\">" << escape(r.label) << "</text>\n";
    }
  }

  for (const Series& s : series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    const std::size_t stride = std::max<std::size_t>(1, (n + kMaxPoints - 1) / kMaxPoints);
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
    if (s.dashed) svg << " stroke-dasharray=\"5 3\"";
    svg << " points=\"";
    for (std::size_t i = 0; i < n; i += stride) {
      if (!std::isfinite(s.y[i])) continue;
      svg << fmt(px(s.x[i])) << ',' << fmt(py(transform_y(s.y[i]))) << ' ';
    }
    if (n > 0 && (n - 1) % stride != 0 && std::isfinite(s.y[n - 1])) {
      svg << fmt(px(s.x[n - 1])) << ',' << fmt(py(transform_y(s.y[n - 1])));
    }
    svg << "\"/>\n";
  }

  double legend_y = top + 10;
  for (const Series& s : series) {
    const double lx = left + plot_w + 14;
    svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(legend_y) << "\" x2=\"" << fmt(lx + 22) << "\" y2=\""
        << fmt(legend_y) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"5 3\"" : "") << "/>\n";
    svg << "<text x=\"" << fmt(lx + 28) << "\" y=\"" << fmt(legend_y + 4) << "\">" << escape(s.label)
        << "</text>\n";
    legend_y += 18;
  }

  svg << "<text x=\"" << fmt(left + plot_w / 2) << "\" y=\"" << fmt(height - 12.0)
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  svg << "<text transform=\"translate(18 " << fmt(top + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label) << (log_y ? " (log)" : "") << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void LinePlot::save(const std::filesystem::path& path) const {
  std::ofstream out = open_output(path);
  out << render();
}

std::string FramePlot::render(int size) const {
  const double margin = 60.0;
  const double inner = size - 2 * margin;

  Range xr;
  Range yr;
  for (const Segment& s : segments) {
    xr.include(s.x0);
    xr.include(s.x1);
    yr.include(s.y0);
    yr.include(s.y1);
  }
  for (const auto& [x, y] : path) {
    xr.include(x);
    yr.include(y);
  }
  for (const auto& [x, y] : markers) {
    xr.include(x);
    yr.include(y);
  }
  if (xr.empty()) xr = {-1.0, 1.0};
  if (yr.empty()) yr = {-1.0, 1.0};
  // Equal aspect ratio.
  const double span = std::max({xr.hi - xr.lo, yr.hi - yr.lo, 1e-9}) * 1.1;
  const double cx = 0.5 * (xr.lo + xr.hi);
  const double cy = 0.5 * (yr.lo + yr.hi);
  const auto px = [&](double x) { return margin + ((x - cx) / span + 0.5) * inner; };
  const auto py = [&](double y) { return margin + (0.5 - (y - cy) / span) * inner; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fmt(size / 2.0) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  svg << "<rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin) << "\" width=\"" << fmt(inner)
      << "\" height=\"" << fmt(inner) << "\" fill=\"none\" stroke=\"black\"/>\n";

  if (!path.empty()) {
    svg << "<polyline fill=\"none\" stroke=\"#888\" stroke-width=\"1.2\" points=\"";
    for (const auto& [x, y] : path) svg << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
    svg << "\"/>\n";
  }
  for (const Segment& s : segments) {
    svg << "<line x1=\"" << fmt(px(s.x0)) << "\" y1=\"" << fmt(py(s.y0)) << "\" x2=\"" << fmt(px(s.x1))
        << "\" y2=\"" << fmt(py(s.y1)) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
  }
  for (const auto& [x, y] : markers) {
    svg << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"4\" fill=\"black\"/>\n";
  }
  svg << "<text x=\"" << fmt(size / 2.0) << "\" y=\"" << fmt(size - 18.0) << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  svg << "<text transform=\"translate(20 " << fmt(size / 2.0) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void FramePlot::save(const std::filesystem::path& path) const {
  std::ofstream out = open_output(path);
  out << render();
}

}  // namespace vcpoint::harness
