#pragma once

// Minimal static line plots.

#include <filesystem>
#include <string>
#include <vector>

namespace relaxns {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  // draw point markers in addition to the polyline
  bool markers = false;
  std::vector<PlotSeries> series;
};

// Non-finite points, and non-positive ones on a log axis, are skipped.
std::string render_svg(const PlotSpec& spec);
void write_svg(const PlotSpec& spec, const std::filesystem::path& path);

} // namespace relaxns
