#pragma once

#include <string>
#include <vector>

namespace mhess::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal standalone SVG line chart; log10 x axis when log_x.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       bool log_x = true);

}  // namespace mhess::cli
