#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fracdev::cli {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Scatter plot with an optional fitted line, as a standalone SVG document.
/// Output depends only on the inputs (fixed number formatting).
std::string svg_plot(const Series& points, std::optional<Line> fit, const std::string& title,
                     const std::string& x_label, const std::string& y_label);

}  // namespace fracdev::cli
