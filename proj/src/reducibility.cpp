#include "regimeflow/reducibility.hpp"

#include "regimeflow/integrator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace regimeflow {
namespace {

std::vector<double> grid_axis(double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("grid: need at least 2 points per axis");
    if (!(hi > lo)) throw std::invalid_argument("grid: domain must have positive extent");
    std::vector<double> axis(static_cast<std::size_t>(n));
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) axis[static_cast<std::size_t>(i)] = lo + step * i;
    return axis;
}

void require_finite(double value, const Vec2& at, const char* what) {
    if (!std::isfinite(value)) {
        throw std::runtime_error(std::string(what) + " is non-finite at (" +
                                 std::to_string(at.x()) + ", " + std::to_string(at.y()) + ")");
    }
}

}  // namespace

DescentReport descent_check(const VecField& field, const ScalarField& potential,
                            const Rect& domain, int n_per_axis, double tol, double fd_step) {
    if (!(fd_step > 0.0)) throw std::invalid_argument("descent_check: fd_step must be positive");
    const std::vector<double> xs = grid_axis(domain.x1_min, domain.x1_max, n_per_axis);
    const std::vector<double> ys = grid_axis(domain.x2_min, domain.x2_max, n_per_axis);

    DescentReport report;
    report.tol = tol;
    report.max_inner = -std::numeric_limits<double>::infinity();
    for (double x : xs) {
        for (double y : ys) {
            const Vec2 p(x, y);
            const Vec2 f = field(p);
            require_finite(f.x(), p, "field");
            require_finite(f.y(), p, "field");
            const double vxp = potential(p + Vec2(fd_step, 0.0));
            const double vxm = potential(p - Vec2(fd_step, 0.0));
            const double vyp = potential(p + Vec2(0.0, fd_step));
            const double vym = potential(p - Vec2(0.0, fd_step));
            require_finite(vxp, p, "potential");
            require_finite(vxm, p, "potential");
            require_finite(vyp, p, "potential");
            require_finite(vym, p, "potential");
            const Vec2 grad((vxp - vxm) / (2.0 * fd_step), (vyp - vym) / (2.0 * fd_step));
            const double inner = grad.dot(f);
            ++report.n_points;
            if (inner > report.max_inner) {
                report.max_inner = inner;
                report.worst_point = p;
            }
            if (inner > tol) ++report.n_violations;
        }
    }
    return report;
}

double CurlGrid::max_abs() const {
    return curl.size() > 0 ? curl.cwiseAbs().maxCoeff() : 0.0;
}

CurlGrid planar_curl(const VecField& field, const Rect& domain, int n_per_axis, double fd_step) {
    if (!(fd_step > 0.0)) throw std::invalid_argument("planar_curl: fd_step must be positive");
    CurlGrid grid;
    grid.x1 = grid_axis(domain.x1_min, domain.x1_max, n_per_axis);
    grid.x2 = grid_axis(domain.x2_min, domain.x2_max, n_per_axis);
    grid.curl.resize(n_per_axis, n_per_axis);
    for (int i = 0; i < n_per_axis; ++i) {
        for (int j = 0; j < n_per_axis; ++j) {
            const Vec2 p(grid.x1[static_cast<std::size_t>(i)], grid.x2[static_cast<std::size_t>(j)]);
            const Vec2 fxp = field(p + Vec2(fd_step, 0.0));
            const Vec2 fxm = field(p - Vec2(fd_step, 0.0));
            const Vec2 fyp = field(p + Vec2(0.0, fd_step));
            const Vec2 fym = field(p - Vec2(0.0, fd_step));
            for (const Vec2& f : {fxp, fxm, fyp, fym}) {
                require_finite(f.x(), p, "field");
                require_finite(f.y(), p, "field");
            }
            const double df2_dx1 = (fxp.y() - fxm.y()) / (2.0 * fd_step);
            const double df1_dx2 = (fyp.x() - fym.x()) / (2.0 * fd_step);
            grid.curl(i, j) = df2_dx1 - df1_dx2;
        }
    }
    return grid;
}

OjaResult oja_simulate(const Eigen::Matrix2d& c, const Vec2& w0, double dt, long n_steps) {
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("oja_simulate: matrix must be symmetric");
    }
    if (n_steps < 0) throw std::invalid_argument("oja_simulate: n_steps must be non-negative");

    const auto field = [&c](const Vec2& w) { return Vec2(c * w - (w.dot(c * w)) * w); };
    const auto value = [&c](const Vec2& w) { return -0.5 * w.dot(c * w); };

    OjaResult result;
    result.t.reserve(static_cast<std::size_t>(n_steps) + 1);
    result.w.reserve(static_cast<std::size_t>(n_steps) + 1);
    result.v.reserve(static_cast<std::size_t>(n_steps) + 1);
    result.t.push_back(0.0);
    result.w.push_back(w0);
    result.v.push_back(value(w0));
    integrate(field, w0, dt, n_steps, [&result, &value](long, double t, const Vec2& w) {
        result.t.push_back(t);
        result.w.push_back(w);
        result.v.push_back(value(w));
    });
    return result;
}

double MinimaxResult::max_drift() const {
    if (radius_sq.empty()) return 0.0;
    double drift = 0.0;
    for (double r : radius_sq) drift = std::max(drift, std::abs(r - radius_sq.front()));
    return drift;
}

MinimaxResult minimax_simulate(const Vec2& xy0, double dt, long n_steps) {
    if (n_steps < 0) throw std::invalid_argument("minimax_simulate: n_steps must be non-negative");
    const auto field = [](const Vec2& p) { return Vec2(-p.y(), p.x()); };

    MinimaxResult result;
    result.t.reserve(static_cast<std::size_t>(n_steps) + 1);
    result.xy.reserve(static_cast<std::size_t>(n_steps) + 1);
    result.radius_sq.reserve(static_cast<std::size_t>(n_steps) + 1);
    result.t.push_back(0.0);
    result.xy.push_back(xy0);
    result.radius_sq.push_back(xy0.squaredNorm());
    integrate(field, xy0, dt, n_steps, [&result](long, double t, const Vec2& p) {
        result.t.push_back(t);
        result.xy.push_back(p);
        result.radius_sq.push_back(p.squaredNorm());
    });
    return result;
}

MonotonicityReport descent_along_series(std::span<const double> t, std::span<const double> v,
                                        double tol) {
    if (t.size() != v.size()) {
        throw std::invalid_argument("descent_along_series: series lengths differ");
    }
    MonotonicityReport report;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double increase = v[i] - v[i - 1];
        report.max_increase = std::max(report.max_increase, increase);
        if (increase > tol) {
            ++report.n_violations;
            if (!report.first_violation_time) report.first_violation_time = t[i];
        }
    }
    return report;
}

}  // namespace regimeflow
