#include "regimeflow/coupled.hpp"

#include "regimeflow/integrator.hpp"

#include <cmath>

namespace regimeflow {

std::vector<SwitchEvent> detect_switches(std::span<const LabelSample> labels, double dwell_min) {
    if (dwell_min < 0.0) throw std::invalid_argument("detect_switches: dwell_min must be non-negative");

    struct Run {
        std::size_t first;
        std::size_t last;
        RegimeLabel label;
    };
    std::vector<Run> kept;
    std::size_t i = 0;
    while (i < labels.size()) {
        std::size_t j = i;
        while (j + 1 < labels.size() && labels[j + 1].label == labels[i].label) ++j;
        const RegimeLabel label = labels[i].label;
        const double span = labels[j].t - labels[i].t;
        if (label != RegimeLabel::Transitional && span >= dwell_min) {
            kept.push_back(Run{i, j, label});
        }
        i = j + 1;
    }

    std::vector<SwitchEvent> events;
    for (std::size_t k = 1; k < kept.size(); ++k) {
        const Run& prev = kept[k - 1];
        const Run& cur = kept[k];
        if (prev.label == cur.label) continue;
        SwitchEvent e;
        e.t_minus = labels[prev.last].t;
        e.t_plus = labels[cur.first].t;
        e.from = prev.label;
        e.to = cur.label;
        events.push_back(e);
    }
    return events;
}

std::optional<double> inter_switch_cv(const std::vector<SwitchEvent>& events) {
    if (events.size() < 3) return std::nullopt;
    std::vector<double> gaps;
    for (RegimeLabel from : {RegimeLabel::Quiescent, RegimeLabel::Oscillatory}) {
        bool have_prev = false;
        double prev = 0.0;
        for (const SwitchEvent& e : events) {
            if (e.from != from) continue;
            if (have_prev) gaps.push_back(e.midpoint() - prev);
            prev = e.midpoint();
            have_prev = true;
        }
    }
    if (gaps.empty()) return std::nullopt;
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    if (!(mean > 0.0)) return std::nullopt;
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    var /= static_cast<double>(gaps.size());
    return std::sqrt(var) / mean;
}

CoupledSystem::CoupledSystem(const RunConfig& cfg)
    : cfg_(cfg),
      pcfg_(plasticity_config(cfg)),
      icfg_(indicator_config(cfg)),
      cycle_cfg_(icfg_.cycle(cfg.dt_sample)),
      weights_(badness_weights(cfg)),
      classifier_(classifier_config(cfg)),
      window_(cfg.window_length, cfg.dt_sample) {
    validate_config(cfg_);
    steps_per_tick_ = std::lround(cfg_.dt_sample / cfg_.dt);
    fast_ = Vec2(cfg_.u0, cfg_.v0);
    theta_ = Vec2(cfg_.theta1_0, cfg_.theta2_0);
    stress_ = StressState{cfg_.s0, cfg_.tau_s, cfg_.s_c};
    refresh_health(true);
}

void CoupledSystem::refresh_health(bool first) {
    if (!first) stress_ = stress_step(stress_, badness_, cfg_.dt_sample);
    window_.push(t(), fast_, fhn_rhs(fast_, fhn_params(cfg_, theta_.x())));

    activity_ = activity_variance(window_);
    indicators_.m_freeze = freeze_indicator(window_, icfg_.kappa);
    indicators_.m_mono = monotony(activity_, icfg_.gamma);
    indicators_.m_cycle = cycle_indicator(window_, cycle_cfg_);
    badness_ = badness(indicators_, weights_);

    const std::vector<double> u = window_.u_values();
    label_ = classify_regime(u, window_.capacity(), classifier_);
    if (pcfg_.mode == PlasticityMode::ExternalSweep) {
        gate_ = 1.0;
    } else {
        gate_ = window_.full() ? gate(stress_.s, pcfg_) : 0.0;
    }
}

void CoupledSystem::advance_tick() {
    for (long i = 0; i < steps_per_tick_; ++i) {
        FhnParams p = fhn_params(cfg_, theta_.x());
        fast_ = rk4_step([&p](const Vec2& s) { return fhn_rhs(s, p); }, fast_, cfg_.dt);
        if (pcfg_.mode == PlasticityMode::ExternalSweep) {
            theta_ = rk4_step(
                [this](const Vec2& th) { return plasticity_drift(th, pcfg_); }, theta_, cfg_.dt);
        } else if (gate_ != 0.0) {
            theta_ = rk4_step(
                [this](const Vec2& th) { return Vec2(gate_ * plasticity_drift(th, pcfg_)); },
                theta_, cfg_.dt);
        }
    }
    ++tick_;
    refresh_health(false);
}

double CoupledSystem::theta_speed() const {
    if (pcfg_.mode == PlasticityMode::ExternalSweep) {
        return plasticity_drift(theta_, pcfg_).norm();
    }
    return gate_ * plasticity_drift(theta_, pcfg_).norm();
}

SampleRow CoupledSystem::row() const {
    SampleRow r;
    r.t = t();
    r.u = fast_.x();
    r.v = fast_.y();
    r.theta1 = theta_.x();
    r.theta2 = theta_.y();
    r.rho = polar_radius(theta_);
    r.phi = polar_angle(theta_);
    r.r = activity_;
    r.m_freeze = indicators_.m_freeze;
    r.m_cycle = indicators_.m_cycle;
    r.m_mono = indicators_.m_mono;
    r.b = badness_;
    r.s = stress_.s;
    r.gate_value = gate_;
    r.label = label_;
    return r;
}

RunResult run_scenario(const RunConfig& cfg) {
    validate_config(cfg);

    RunResult out;
    out.config = cfg;

    CoupledSystem sys(cfg);
    const long n_ticks = std::lround(cfg.horizon / cfg.dt_sample);
    const long out_every = std::lround(cfg.dt_out / cfg.dt_sample);
    const double burn_end = 0.1 * cfg.horizon;

    out.labels.reserve(static_cast<std::size_t>(n_ticks) + 1);
    out.samples.reserve(static_cast<std::size_t>(n_ticks / out_every) + 1);

    double badness_sum = 0.0;
    long badness_count = 0;
    const auto record = [&](long k) {
        out.labels.push_back(LabelSample{sys.t(), sys.label()});
        if (k % out_every == 0) out.samples.push_back(sys.row());
        if (sys.t() >= burn_end - 1e-9) {
            badness_sum += sys.badness_value();
            ++badness_count;
        }
    };

    record(0);
    for (long k = 1; k <= n_ticks; ++k) {
        sys.advance_tick();
        record(k);
    }

    out.events = detect_switches(out.labels, cfg.dwell_min);

    RunSummary& s = out.summary;
    s.n_switches = static_cast<long>(out.events.size());
    const double final_third = cfg.horizon * (2.0 / 3.0);
    for (const SwitchEvent& e : out.events) {
        if (e.t_plus >= final_third - 1e-9) ++s.n_switches_final_third;
    }
    s.mean_badness_post_burnin = badness_count > 0 ? badness_sum / badness_count : 0.0;
    s.final_theta_speed = sys.theta_speed();
    s.inter_switch_cv = inter_switch_cv(out.events);
    return out;
}

}  // namespace regimeflow
