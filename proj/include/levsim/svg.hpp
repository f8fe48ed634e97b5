#pragma once

// Minimal static line charts.

#include <optional>
#include <string>
#include <vector>

namespace levsim {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;  // NaN breaks the polyline
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::optional<double> baseline;  // dashed horizontal rule
  int width = 720;
  int height = 440;
};

std::string render_svg(const Chart& chart);

}  // namespace levsim
