#pragma once

#include "regimeflow/fhn.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace regimeflow {

struct HealthSample {
    double t = 0.0;
    Vec2 state = Vec2::Zero();
    Vec2 deriv = Vec2::Zero();
};

// Fixed-capacity ring buffer of uniformly spaced samples covering the most
// recent window_length time units. Capacity is window_length / dt_sample
// rounded to the nearest integer; pushes beyond capacity evict the oldest
// sample. Sample spacing is checked against dt_sample.
class HealthWindow {
public:
    HealthWindow(double window_length, double dt_sample);

    void push(double t, const Vec2& state, const Vec2& deriv);

    std::size_t size() const noexcept { return count_; }
    std::size_t capacity() const noexcept { return buf_.size(); }
    bool empty() const noexcept { return count_ == 0; }
    bool full() const noexcept { return count_ == buf_.size(); }
    double dt_sample() const noexcept { return dt_sample_; }

    // Index 0 is the oldest retained sample.
    const HealthSample& operator[](std::size_t i) const;

    std::vector<double> u_values() const;

private:
    std::vector<HealthSample> buf_;
    std::size_t next_ = 0;
    std::size_t count_ = 0;
    double dt_sample_ = 0.0;
    double last_t_ = 0.0;
};

// Sum of the population variances of u and v over the window.
// Throws std::invalid_argument on an empty window.
double activity_variance(const HealthWindow& w);

// exp(-gamma r): 1 at zero activity, decaying toward 0 as the windowed
// variance r grows.
double monotony(double r, double gamma);

// exp(-kappa * mean ||deriv||): near 1 when the trajectory barely moves.
// Throws std::invalid_argument on an empty window.
double freeze_indicator(const HealthWindow& w, double kappa);

// Largest lag-normalized autocorrelation of the mean-removed series over
// lags [lag_min, lag_max]:
//   c(l) = (sum_i d_i d_{i+l} / (n - l)) / (sum_i d_i^2 / n).
// Requires n > lag_max and 1 <= lag_min <= lag_max.
double max_autocorrelation(std::span<const double> series, int lag_min, int lag_max);

struct CycleConfig {
    int lag_min = 10;   // samples
    int lag_max = 100;  // samples
    double kappa = 2.0;
    double var_floor = 1e-10;
};

// clamp(c*, 0, 1) * (1 - freeze_indicator): high only for a window that is
// both periodic and actually moving. Returns 0 while the window holds fewer
// than 2 * lag_max samples or when the u variance sits below var_floor.
double cycle_indicator(const HealthWindow& w, const CycleConfig& cfg);

struct Indicators {
    double m_freeze = 0.0;
    double m_cycle = 0.0;
    double m_mono = 0.0;
};

struct IndicatorConfig {
    double gamma = 1.0;
    double kappa = 2.0;
    double lag_min_time = 5.0;
    double lag_max_time = 50.0;
    double var_floor = 1e-10;

    CycleConfig cycle(double dt_sample) const;
};

// All three indicators from one window. Throws on an empty window.
Indicators compute_indicators(const HealthWindow& w, const IndicatorConfig& cfg);

struct BadnessWeights {
    double w_f = 0.5;
    double w_c = 2.0;
    double w_m = 0.5;
};

inline double badness(const Indicators& m, const BadnessWeights& w) {
    return w.w_f * m.m_freeze + w.w_c * m.m_cycle + w.w_m * m.m_mono;
}

// First-order relaxation of the stress level s toward the badness input b
// with time constant tau_s. stress_step applies the exact exponential update
// for a b held constant over dt, so the fixed point s == b is reproduced
// without drift and s stays inside [min(s, b), max(s, b)].
struct StressState {
    double s = 0.0;
    double tau_s = 50.0;
    double s_c = 0.9;
};

StressState stress_step(StressState st, double b, double dt);

}  // namespace regimeflow
