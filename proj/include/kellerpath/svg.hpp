#pragma once

#include <string>
#include <vector>

namespace ks {

/// Hand-emitted SVG line charts (diagnostic figures, no plotting
/// dependency).  Output is deterministic.
struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<SvgSeries>& series);

}  // namespace ks
