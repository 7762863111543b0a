#pragma once

#include <string>
#include <utility>
#include <vector>

namespace condspec::svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  int width = 760;
  int height = 480;
};

// Self-contained SVG 1.1 line chart, no external assets. Non-finite points
// are dropped.
std::string line_chart(const ChartSpec& spec,
                       const std::vector<Series>& series);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace condspec::svg
