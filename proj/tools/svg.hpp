#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ere::cli {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct Axes {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  std::string xlabel, ylabel, title;
};

// Polylines over a framed plot with ticks; labels at the last point of each series.
void write_svg(std::ostream& os, const Axes& ax, const std::vector<Series>& series);

}  // namespace ere::cli
