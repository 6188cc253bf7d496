#pragma once

// Minimal standalone SVG output for time series and phase diagrams.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace nhprobe::plot {

using Polyline = std::vector<std::pair<double, double>>;

struct LinePlot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<double> x;
  std::vector<double> y;
  double ymin = 0.0;
  double ymax = 1.0;
  std::vector<double> vlines;  // dashed vertical markers
};

/// Cells are values[i * ys.size() + j] at (xs[i], ys[j]); NaN cells are grey.
/// Colors map [0, 1] linearly regardless of the data range.
struct Heatmap {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;
  std::vector<Polyline> boundary;  // drawn dashed, data coordinates
};

std::string line_plot_svg(const LinePlot& plot);
std::string heatmap_svg(const Heatmap& map);

/// #rrggbb for v ∈ [0, 1] (clamped).
std::string color_for(double v);

/// Writes text to path, throwing std::runtime_error on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace nhprobe::plot
