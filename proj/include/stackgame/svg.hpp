#pragma once

#include <string>
#include <vector>

namespace stackgame {

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line chart (axes, ticks, legend); returns the document
/// text. No external renderer is involved; CSV remains the data contract.
[[nodiscard]] std::string render_line_chart(const std::string& title, const std::string& x_label,
                                            const std::string& y_label,
                                            const std::vector<ChartSeries>& series);

/// Renders and writes to `path`.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<ChartSeries>& series);

}  // namespace stackgame
