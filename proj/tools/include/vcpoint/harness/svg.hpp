#pragma once

// Minimal self-contained SVG line plots for the scenario plots.

#include <filesystem>
#include <string>
#include <vector>

namespace vcpoint::harness {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct ReferenceLine {
  double y = 0.0;
  std::string label;
};

struct LinePlot {
  std::string title;
  std::string x_label = "t [s]";
  std::string y_label;
  bool log_y = false;
  /// Values at or below this floor are clamped on log axes.
  double log_floor = 1e-16;
  std::vector<Series> series;
  std::vector<ReferenceLine> references;

  std::string render(int width = 720, int height = 420) const;
  void save(const std::filesystem::path& path) const;
};

/// Arrow segments for frame snapshots (e.g. projected body axes).
struct Segment {
  double x0, y0, x1, y1;
  std::string color;
};

struct FramePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Segment> segments;
  std::vector<std::pair<double, double>> path;
  std::vector<std::pair<double, double>> markers;

  std::string render(int size = 560) const;
  void save(const std::filesystem::path& path) const;
};

}  // namespace vcpoint::harness
