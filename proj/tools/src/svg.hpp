#pragma once

#include <string>
#include <utility>
#include <vector>

namespace elab::tools {

struct PlotCurve {
  std::vector<std::pair<double, double>> polyline;
  std::string color = "#d62728";
  std::string label;
};

// Self-contained scatter plot: endpoint markers plus overlay curves, with
// axes fitted to the data. Always emits a valid SVG, even with no points.
std::string render_scatter_svg(const std::string& title,
                               const std::string& x_label,
                               const std::string& y_label,
                               const std::vector<std::pair<double, double>>& pts,
                               const std::vector<PlotCurve>& curves);

}  // namespace elab::tools
