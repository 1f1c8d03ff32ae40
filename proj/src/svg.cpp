#include "regimeflow/svg.hpp"

#include "regimeflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace regimeflow {
namespace {

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void widen() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

void write_line_chart(std::ostream& os, const std::string& title,
                      const std::vector<SvgSeries>& series, int width, int height,
                      std::size_t max_points) {
    const double margin_left = 64.0;
    const double margin_right = 16.0;
    const double margin_top = 28.0;
    const double margin_bottom = 36.0;
    const double plot_w = width - margin_left - margin_right;
    const double plot_h = height - margin_top - margin_bottom;

    Range xr;
    Range yr;
    for (const SvgSeries& s : series) {
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("write_line_chart: series lengths differ");
        }
        for (double v : s.x) xr.include(v);
        for (double v : s.y) yr.include(v);
    }
    xr.widen();
    yr.widen();

    const auto px = [&](double x) {
        return margin_left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
    };
    const auto py = [&](double y) {
        return margin_top + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h;
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << margin_left << "\" y=\"18\" font-family=\"sans-serif\" "
          "font-size=\"13\" fill=\"#333\">"
       << title << "</text>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        const double gx = px(fx);
        const double gy = py(fy);
        os << "<line x1=\"" << gx << "\" y1=\"" << margin_top << "\" x2=\"" << gx << "\" y2=\""
           << margin_top + plot_h << "\" stroke=\"#eee\"/>\n";
        os << "<line x1=\"" << margin_left << "\" y1=\"" << gy << "\" x2=\""
           << margin_left + plot_w << "\" y2=\"" << gy << "\" stroke=\"#eee\"/>\n";
        os << "<text x=\"" << gx << "\" y=\"" << height - 12 << "\" font-family=\"sans-serif\" "
              "font-size=\"10\" fill=\"#666\" text-anchor=\"middle\">"
           << tick_label(fx) << "</text>\n";
        os << "<text x=\"" << margin_left - 6 << "\" y=\"" << gy + 3
           << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#666\" "
              "text-anchor=\"end\">"
           << tick_label(fy) << "</text>\n";
    }
    os << "<rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\"" << plot_w
       << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#999\"/>\n";

    double legend_x = margin_left + 8.0;
    for (const SvgSeries& s : series) {
        if (s.x.empty()) continue;
        const std::size_t stride = std::max<std::size_t>(1, s.x.size() / max_points);
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); i += stride) {
            os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        if ((s.x.size() - 1) % stride != 0) {
            os << px(s.x.back()) << ',' << py(s.y.back());
        }
        os << "\"/>\n";
        os << "<text x=\"" << legend_x << "\" y=\"" << margin_top + 14
           << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << s.color << "\">"
           << s.label << "</text>\n";
        legend_x += 10.0 * s.label.size() + 24.0;
    }
    os << "</svg>\n";
}

std::vector<std::string> write_run_panels(const std::string& dir, const RunResult& result) {
    std::filesystem::create_directories(dir);

    std::vector<double> t, u, r, rho, phi, b;
    t.reserve(result.samples.size());
    for (const SampleRow& row : result.samples) {
        t.push_back(row.t);
        u.push_back(row.u);
        r.push_back(row.r);
        rho.push_back(row.rho);
        phi.push_back(row.phi);
        b.push_back(row.b);
    }

    const auto write_panel = [&dir](const std::string& name, const std::string& title,
                                    const std::vector<SvgSeries>& series) {
        const std::string path = (std::filesystem::path(dir) / name).string();
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
        write_line_chart(out, title, series);
        return path;
    };

    std::vector<std::string> written;
    written.push_back(write_panel("panel_u.svg", "fast voltage u(t)",
                                  {SvgSeries{"u", "#1f6fb2", t, u}}));
    written.push_back(write_panel("panel_activity.svg", "windowed activity R(t)",
                                  {SvgSeries{"R", "#b26f1f", t, r}}));
    written.push_back(write_panel("panel_structure.svg", "structural polar view",
                                  {SvgSeries{"rho", "#2a8c55", t, rho},
                                   SvgSeries{"phi", "#8c2a61", t, phi}}));
    written.push_back(write_panel("panel_badness.svg", "badness B(t)",
                                  {SvgSeries{"B", "#b23a1f", t, b}}));
    return written;
}

}  // namespace regimeflow
