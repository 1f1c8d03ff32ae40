#pragma once

#include "regimeflow/coupled.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace regimeflow {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

// Self-contained SVG line chart: axes, tick labels, legend, one polyline per
// series. Long series are decimated to at most max_points vertices.
void write_line_chart(std::ostream& os, const std::string& title,
                      const std::vector<SvgSeries>& series, int width = 960, int height = 280,
                      std::size_t max_points = 3000);

// The standard panel set for a run: fast voltage u(t), windowed activity
// R(t), structural polar view (rho, phi), and badness B(t). Returns the
// files written into dir.
std::vector<std::string> write_run_panels(const std::string& dir, const RunResult& result);

}  // namespace regimeflow
