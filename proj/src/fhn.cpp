#include "regimeflow/fhn.hpp"

#include "regimeflow/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regimeflow {

void validate(const FhnParams& p) {
    if (!(p.epsilon > 0.0) || !(p.epsilon <= 0.2)) {
        throw std::invalid_argument("fhn: epsilon must be in (0, 0.2]");
    }
    if (!(p.b > 0.0)) {
        throw std::invalid_argument("fhn: b must be positive");
    }
    if (!std::isfinite(p.a) || !std::isfinite(p.theta1)) {
        throw std::invalid_argument("fhn: parameters must be finite");
    }
}

Vec2 fhn_fixed_point(const FhnParams& p) {
    validate(p);
    if (p.b > 1.0) {
        throw std::invalid_argument("fhn_fixed_point: requires b <= 1 for a unique root");
    }
    const auto g = [&p](double u) {
        return u - u * u * u / 3.0 - (u + p.a) / p.b + p.theta1;
    };
    double lo = -4.0;
    double hi = 4.0;
    double glo = g(lo);
    double ghi = g(hi);
    if (!(glo > 0.0 && ghi < 0.0)) {
        throw std::invalid_argument("fhn_fixed_point: root not bracketed in [-4, 4]");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) break;
    }
    const double u = 0.5 * (lo + hi);
    const double v = (u + p.a) / p.b;
    return Vec2(u, v);
}

char regime_char(RegimeLabel label) {
    switch (label) {
        case RegimeLabel::Quiescent: return 'Q';
        case RegimeLabel::Oscillatory: return 'O';
        case RegimeLabel::Transitional: return 'T';
    }
    return '?';
}

RegimeLabel classify_regime(double u_std, bool enough_samples, const ClassifierConfig& cfg) {
    if (!enough_samples) return RegimeLabel::Transitional;
    if (u_std < cfg.sigma_lo) return RegimeLabel::Quiescent;
    if (u_std > cfg.sigma_hi) return RegimeLabel::Oscillatory;
    return RegimeLabel::Transitional;
}

RegimeLabel classify_regime(std::span<const double> u_window, std::size_t min_samples,
                            const ClassifierConfig& cfg) {
    const std::size_t n = u_window.size();
    if (n < min_samples || n == 0) return RegimeLabel::Transitional;
    double mean = 0.0;
    for (double u : u_window) mean += u;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double u : u_window) var += (u - mean) * (u - mean);
    var /= static_cast<double>(n);
    return classify_regime(std::sqrt(var), true, cfg);
}

ScanResult bifurcation_scan(const ScanConfig& scan, const FhnParams& base) {
    validate(base);
    if (scan.n_points < 2) throw std::invalid_argument("bifurcation_scan: need at least 2 grid points");
    if (!(scan.theta1_max > scan.theta1_min)) {
        throw std::invalid_argument("bifurcation_scan: theta1_max must exceed theta1_min");
    }
    if (!(scan.dt > 0.0) || !(scan.burn_in >= 0.0) || !(scan.measure > 0.0)) {
        throw std::invalid_argument("bifurcation_scan: dt and measure must be positive, burn_in non-negative");
    }

    const long burn_steps = std::lround(scan.burn_in / scan.dt);
    const long measure_steps = std::lround(scan.measure / scan.dt);
    const double step = (scan.theta1_max - scan.theta1_min) / (scan.n_points - 1);

    ScanResult result;
    result.points.reserve(static_cast<std::size_t>(scan.n_points));
    for (int i = 0; i < scan.n_points; ++i) {
        FhnParams p = base;
        p.theta1 = scan.theta1_min + step * i;
        const auto field = [&p](const Vec2& s) { return fhn_rhs(s, p); };

        Vec2 state = integrate(field, scan.initial_state, scan.dt, burn_steps);
        double u_min = state.x();
        double u_max = state.x();
        state = integrate(field, state, scan.dt, measure_steps,
                          [&u_min, &u_max](long, double, const Vec2& s) {
                              u_min = std::min(u_min, s.x());
                              u_max = std::max(u_max, s.x());
                          });

        ScanPoint point;
        point.theta1 = p.theta1;
        point.amplitude = u_max - u_min;
        point.label = point.amplitude > scan.amp_threshold ? RegimeLabel::Oscillatory
                                                           : RegimeLabel::Quiescent;
        result.points.push_back(point);
    }

    for (std::size_t i = 1; i < result.points.size(); ++i) {
        const ScanPoint& prev = result.points[i - 1];
        const ScanPoint& cur = result.points[i];
        if (prev.label != cur.label) {
            result.boundaries.emplace_back(prev.theta1, cur.theta1);
            if (prev.label == RegimeLabel::Quiescent && cur.label == RegimeLabel::Oscillatory) {
                result.onsets.emplace_back(prev.theta1, cur.theta1);
            }
        }
    }
    return result;
}

}  // namespace regimeflow
