#pragma once

#include "regimeflow/config.hpp"
#include "regimeflow/fhn.hpp"
#include "regimeflow/health.hpp"
#include "regimeflow/plasticity.hpp"

#include <optional>
#include <span>
#include <vector>

namespace regimeflow {

struct LabelSample {
    double t = 0.0;
    RegimeLabel label = RegimeLabel::Transitional;
};

struct SwitchEvent {
    double t_minus = 0.0;  // last sample still classified in the old regime
    double t_plus = 0.0;   // first sample classified in the new regime
    RegimeLabel from = RegimeLabel::Quiescent;
    RegimeLabel to = RegimeLabel::Oscillatory;

    double midpoint() const { return 0.5 * (t_minus + t_plus); }
};

// Compress the label series into maximal runs, keep the Quiescent and
// Oscillatory runs spanning at least dwell_min time units (span measured
// first-to-last sample, boundary inclusive), and emit one event between each
// pair of consecutive kept runs whose labels differ. Shorter excursions and
// Transitional stretches never anchor an event.
std::vector<SwitchEvent> detect_switches(std::span<const LabelSample> labels, double dwell_min);

// Coefficient of variation of the intervals between same-direction events
// (midpoint to midpoint, pooled over both directions). Absent with fewer
// than three events.
std::optional<double> inter_switch_cv(const std::vector<SwitchEvent>& events);

struct SampleRow {
    double t = 0.0;
    double u = 0.0;
    double v = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double rho = 0.0;
    double phi = 0.0;
    double r = 0.0;  // windowed activity variance
    double m_freeze = 0.0;
    double m_cycle = 0.0;
    double m_mono = 0.0;
    double b = 0.0;
    double s = 0.0;
    double gate_value = 0.0;
    RegimeLabel label = RegimeLabel::Transitional;
};

struct RunSummary {
    long n_switches = 0;
    long n_switches_final_third = 0;
    double mean_badness_post_burnin = 0.0;
    double final_theta_speed = 0.0;
    std::optional<double> inter_switch_cv;
};

struct RunResult {
    RunConfig config;
    std::vector<SampleRow> samples;   // one row per dt_out
    std::vector<LabelSample> labels;  // one entry per dt_sample
    std::vector<SwitchEvent> events;
    RunSummary summary;
};

// One coupled state advanced a sample tick at a time. Each tick integrates
// dt_sample forward in dt substeps (the fast layer under the structural
// drive frozen per substep, then the structural state under the gate value
// held from the last sample time), then refreshes window, indicators,
// stress, regime label and gate at the new sample time. The gate stays
// closed until the health window has filled once; the sweep mode is never
// gated.
class CoupledSystem {
public:
    explicit CoupledSystem(const RunConfig& cfg);

    void advance_tick();

    double t() const noexcept { return static_cast<double>(tick_) * cfg_.dt_sample; }
    const Vec2& fast() const noexcept { return fast_; }
    const Vec2& theta() const noexcept { return theta_; }
    double stress() const noexcept { return stress_.s; }
    const Indicators& indicators() const noexcept { return indicators_; }
    double activity() const noexcept { return activity_; }
    double badness_value() const noexcept { return badness_; }
    RegimeLabel label() const noexcept { return label_; }
    double gate_value() const noexcept { return gate_; }

    // Magnitude of the structural drift the next substep would apply.
    double theta_speed() const;

    SampleRow row() const;

private:
    void refresh_health(bool first);

    RunConfig cfg_;
    PlasticityConfig pcfg_;
    IndicatorConfig icfg_;
    CycleConfig cycle_cfg_;
    BadnessWeights weights_;
    ClassifierConfig classifier_;
    HealthWindow window_;
    long steps_per_tick_ = 1;
    long tick_ = 0;

    Vec2 fast_ = Vec2::Zero();
    Vec2 theta_ = Vec2::Zero();
    StressState stress_;
    Indicators indicators_;
    double activity_ = 0.0;
    double badness_ = 0.0;
    double gate_ = 0.0;
    RegimeLabel label_ = RegimeLabel::Transitional;
};

RunResult run_scenario(const RunConfig& cfg);

}  // namespace regimeflow
