#pragma once

#include <span>
#include <string>
#include <vector>

namespace amgate::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Static polyline chart with axes and at most two series. Points that cannot be shown on a
/// log axis (non-positive) are dropped.
std::string render(const Plot& plot, std::span<const Series> series);

}  // namespace amgate::svg
