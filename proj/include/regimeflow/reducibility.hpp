#pragma once

#include "regimeflow/fhn.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace regimeflow {

using VecField = std::function<Vec2(const Vec2&)>;
using ScalarField = std::function<double(const Vec2&)>;

struct Rect {
    double x1_min = -2.0;
    double x1_max = 2.0;
    double x2_min = -2.0;
    double x2_max = 2.0;
};

// Evaluates grad V (central differences, step fd_step) dotted with the field
// on an n_per_axis x n_per_axis grid. A genuine descent flow keeps the inner
// product at or below zero everywhere; entries above tol count as
// violations. Non-finite field or potential values raise std::runtime_error.
struct DescentReport {
    long n_points = 0;
    long n_violations = 0;
    double max_inner = 0.0;
    Vec2 worst_point = Vec2::Zero();
    double tol = 0.0;

    bool passed() const { return n_violations == 0; }
};

DescentReport descent_check(const VecField& field, const ScalarField& potential,
                            const Rect& domain, int n_per_axis, double tol,
                            double fd_step = 1e-5);

// dF2/dx1 - dF1/dx2 by central differences on a grid. Identically zero for
// any gradient field; a rotational component shows up as a non-zero value.
struct CurlGrid {
    std::vector<double> x1;
    std::vector<double> x2;
    Eigen::MatrixXd curl;  // curl(i, j) at (x1[i], x2[j])

    double max_abs() const;
};

CurlGrid planar_curl(const VecField& field, const Rect& domain, int n_per_axis,
                     double fd_step = 1e-3);

// Principal-component flow dw/dt = C w - (w' C w) w for a symmetric C.
// Stores the trajectory and the value v = -(1/2) w' C w at every step; v is
// non-increasing along exact solutions and the weight norm tends to 1.
struct OjaResult {
    std::vector<double> t;
    std::vector<Vec2> w;
    std::vector<double> v;

    const Vec2& final_w() const { return w.back(); }
};

OjaResult oja_simulate(const Eigen::Matrix2d& c, const Vec2& w0, double dt, long n_steps);

// Rotation flow dx/dt = -y, dy/dt = x. The squared radius is conserved
// exactly by the flow, so its drift measures integration error.
struct MinimaxResult {
    std::vector<double> t;
    std::vector<Vec2> xy;
    std::vector<double> radius_sq;

    double max_drift() const;
};

MinimaxResult minimax_simulate(const Vec2& xy0, double dt, long n_steps);

// Scans a sampled scalar series for increases between consecutive samples.
// Reports the largest single-step increase and the time of the first step
// exceeding tol.
struct MonotonicityReport {
    double max_increase = 0.0;
    long n_violations = 0;
    std::optional<double> first_violation_time;

    bool passed() const { return n_violations == 0; }
};

MonotonicityReport descent_along_series(std::span<const double> t, std::span<const double> v,
                                        double tol);

}  // namespace regimeflow
