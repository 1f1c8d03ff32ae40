#include "regimeflow/health.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regimeflow {

HealthWindow::HealthWindow(double window_length, double dt_sample) {
    if (!(window_length > 0.0) || !(dt_sample > 0.0)) {
        throw std::invalid_argument("HealthWindow: window_length and dt_sample must be positive");
    }
    const long cap = std::lround(window_length / dt_sample);
    if (cap < 1) {
        throw std::invalid_argument("HealthWindow: window shorter than one sample interval");
    }
    buf_.resize(static_cast<std::size_t>(cap));
    dt_sample_ = dt_sample;
}

void HealthWindow::push(double t, const Vec2& state, const Vec2& deriv) {
    if (count_ > 0) {
        const double gap = t - last_t_;
        if (std::abs(gap - dt_sample_) > 1e-9 * std::max(1.0, std::abs(t))) {
            throw std::invalid_argument("HealthWindow: non-uniform sample spacing");
        }
    }
    buf_[next_] = HealthSample{t, state, deriv};
    next_ = (next_ + 1) % buf_.size();
    count_ = std::min(count_ + 1, buf_.size());
    last_t_ = t;
}

const HealthSample& HealthWindow::operator[](std::size_t i) const {
    if (i >= count_) throw std::out_of_range("HealthWindow: index past size");
    const std::size_t oldest = (next_ + buf_.size() - count_) % buf_.size();
    return buf_[(oldest + i) % buf_.size()];
}

std::vector<double> HealthWindow::u_values() const {
    std::vector<double> u(count_);
    for (std::size_t i = 0; i < count_; ++i) u[i] = (*this)[i].state.x();
    return u;
}

double activity_variance(const HealthWindow& w) {
    if (w.empty()) throw std::invalid_argument("activity_variance: empty window");
    const double n = static_cast<double>(w.size());
    Vec2 mean = Vec2::Zero();
    for (std::size_t i = 0; i < w.size(); ++i) mean += w[i].state;
    mean /= n;
    Vec2 var = Vec2::Zero();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Vec2 d = w[i].state - mean;
        var += d.cwiseProduct(d);
    }
    return var.sum() / n;
}

double monotony(double r, double gamma) {
    if (!(r >= 0.0)) throw std::invalid_argument("monotony: variance must be non-negative");
    if (!(gamma > 0.0)) throw std::invalid_argument("monotony: gamma must be positive");
    return std::exp(-gamma * r);
}

double freeze_indicator(const HealthWindow& w, double kappa) {
    if (w.empty()) throw std::invalid_argument("freeze_indicator: empty window");
    if (!(kappa > 0.0)) throw std::invalid_argument("freeze_indicator: kappa must be positive");
    double mean_speed = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) mean_speed += w[i].deriv.norm();
    mean_speed /= static_cast<double>(w.size());
    return std::exp(-kappa * mean_speed);
}

double max_autocorrelation(std::span<const double> series, int lag_min, int lag_max) {
    const int n = static_cast<int>(series.size());
    if (lag_min < 1 || lag_max < lag_min) {
        throw std::invalid_argument("max_autocorrelation: need 1 <= lag_min <= lag_max");
    }
    if (n <= lag_max) {
        throw std::invalid_argument("max_autocorrelation: series shorter than lag_max + 1");
    }
    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= n;
    std::vector<double> d(series.size());
    double denom = 0.0;
    for (int i = 0; i < n; ++i) {
        d[i] = series[i] - mean;
        denom += d[i] * d[i];
    }
    denom /= n;
    if (denom <= 0.0) return 0.0;

    double best = -1.0;
    for (int lag = lag_min; lag <= lag_max; ++lag) {
        double num = 0.0;
        for (int i = 0; i + lag < n; ++i) num += d[i] * d[i + lag];
        num /= (n - lag);
        best = std::max(best, num / denom);
    }
    return best;
}

double cycle_indicator(const HealthWindow& w, const CycleConfig& cfg) {
    if (w.empty()) throw std::invalid_argument("cycle_indicator: empty window");
    if (cfg.lag_min < 1 || cfg.lag_max < cfg.lag_min) {
        throw std::invalid_argument("cycle_indicator: need 1 <= lag_min <= lag_max");
    }
    if (w.size() < 2 * static_cast<std::size_t>(cfg.lag_max)) return 0.0;

    const std::vector<double> u = w.u_values();
    const double n = static_cast<double>(u.size());
    double mean = 0.0;
    for (double x : u) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : u) var += (x - mean) * (x - mean);
    var /= n;
    if (var < cfg.var_floor) return 0.0;

    const double c = max_autocorrelation(u, cfg.lag_min, cfg.lag_max);
    const double activity = 1.0 - freeze_indicator(w, cfg.kappa);
    return std::clamp(c, 0.0, 1.0) * activity;
}

CycleConfig IndicatorConfig::cycle(double dt_sample) const {
    CycleConfig c;
    c.lag_min = static_cast<int>(std::lround(lag_min_time / dt_sample));
    c.lag_max = static_cast<int>(std::lround(lag_max_time / dt_sample));
    c.kappa = kappa;
    c.var_floor = var_floor;
    return c;
}

Indicators compute_indicators(const HealthWindow& w, const IndicatorConfig& cfg) {
    Indicators m;
    m.m_freeze = freeze_indicator(w, cfg.kappa);
    m.m_mono = monotony(activity_variance(w), cfg.gamma);
    m.m_cycle = cycle_indicator(w, cfg.cycle(w.dt_sample()));
    return m;
}

StressState stress_step(StressState st, double b, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("stress_step: dt must be positive");
    if (!(dt < st.tau_s)) throw std::invalid_argument("stress_step: dt must be below tau_s");
    const double decay = std::exp(-dt / st.tau_s);
    st.s = b + (st.s - b) * decay;
    return st;
}

}  // namespace regimeflow
