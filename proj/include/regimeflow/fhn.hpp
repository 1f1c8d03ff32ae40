#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace regimeflow {

using Vec2 = Eigen::Vector2d;

// Excitable two-variable dynamics
//   du/dt = u - u^3/3 - v + theta1
//   dv/dt = epsilon (u + a - b v)
// where theta1 is an external drive supplied by the structural layer.
struct FhnParams {
    double a = 0.7;
    double b = 0.8;
    double epsilon = 0.08;
    double theta1 = 0.0;
};

// Throws std::invalid_argument unless epsilon is in (0, 0.2] and b > 0.
void validate(const FhnParams& p);

inline Vec2 fhn_rhs(const Vec2& s, const FhnParams& p) {
    const double u = s.x();
    const double v = s.y();
    return Vec2(u - u * u * u / 3.0 - v + p.theta1,
                p.epsilon * (u + p.a - p.b * v));
}

// Intersection of the two nullclines, found by bisection on
// g(u) = u - u^3/3 - (u + a)/b + theta1, which is strictly decreasing for
// b <= 1, so the root is unique. Throws std::invalid_argument when b > 1 or
// when [-4, 4] fails to bracket a root.
Vec2 fhn_fixed_point(const FhnParams& p);

enum class RegimeLabel { Quiescent, Oscillatory, Transitional };

char regime_char(RegimeLabel label);

struct ClassifierConfig {
    double sigma_lo = 0.15;
    double sigma_hi = 0.35;
};

// Three-way amplitude classification of a recent-u window by the population
// standard deviation: below sigma_lo is Quiescent, above sigma_hi is
// Oscillatory, the band in between is Transitional. A flip between Quiescent
// and Oscillatory therefore requires crossing the whole band. A window that
// is not yet filled (fewer than min_samples entries) reads Transitional.
RegimeLabel classify_regime(double u_std, bool enough_samples, const ClassifierConfig& cfg);
RegimeLabel classify_regime(std::span<const double> u_window, std::size_t min_samples,
                            const ClassifierConfig& cfg);

// Stationary-drive sweep: for each theta1 on a uniform grid, integrate from
// initial_state for burn_in time units, then record the peak-to-peak u
// amplitude over the next measure time units. Amplitude above amp_threshold
// reads Oscillatory, otherwise Quiescent.
struct ScanConfig {
    double theta1_min = -1.5;
    double theta1_max = 1.5;
    int n_points = 61;
    double dt = 0.02;
    double burn_in = 500.0;
    double measure = 500.0;
    double amp_threshold = 1.0;
    Vec2 initial_state = Vec2::Zero();
};

struct ScanPoint {
    double theta1 = 0.0;
    RegimeLabel label = RegimeLabel::Quiescent;
    double amplitude = 0.0;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    // Grid intervals whose endpoints carry different labels.
    std::vector<std::pair<double, double>> boundaries;
    // The subset of boundaries that go Quiescent -> Oscillatory in grid order.
    std::vector<std::pair<double, double>> onsets;
};

ScanResult bifurcation_scan(const ScanConfig& scan, const FhnParams& base);

}  // namespace regimeflow
