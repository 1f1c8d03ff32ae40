#include "regimeflow/health.hpp"

#include "regimeflow/integrator.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace regimeflow;

namespace {

HealthWindow window_from(const std::vector<Vec2>& states, const std::vector<Vec2>& derivs,
                         double dt_sample = 0.5) {
    HealthWindow w(dt_sample * static_cast<double>(states.size()), dt_sample);
    for (std::size_t i = 0; i < states.size(); ++i) {
        w.push(static_cast<double>(i) * dt_sample, states[i], derivs[i]);
    }
    return w;
}

HealthWindow fhn_window(double theta1, double settle, double window_length = 100.0,
                        double dt_sample = 0.5) {
    FhnParams p;
    p.theta1 = theta1;
    const auto field = [&p](const Vec2& s) { return fhn_rhs(s, p); };
    const double dt = 0.02;
    Vec2 state = integrate(field, Vec2(0.0, 0.0), dt, std::lround(settle / dt));
    HealthWindow w(window_length, dt_sample);
    const long per_sample = std::lround(dt_sample / dt);
    const long n_samples = std::lround(window_length / dt_sample);
    for (long i = 0; i < n_samples; ++i) {
        w.push(static_cast<double>(i) * dt_sample, state, fhn_rhs(state, p));
        state = integrate(field, state, dt, per_sample);
    }
    return w;
}

}  // namespace

TEST_CASE("window ring buffer tracks size, capacity and eviction") {
    HealthWindow w(100.0, 0.5);
    CHECK(w.capacity() == 200);
    CHECK(w.empty());
    for (int i = 0; i < 250; ++i) {
        w.push(i * 0.5, Vec2(static_cast<double>(i), 0.0), Vec2::Zero());
    }
    CHECK(w.full());
    CHECK(w.size() == 200);
    CHECK(w[0].state.x() == 50.0);
    CHECK(w[199].state.x() == 249.0);
    CHECK_THROWS_AS(w[200], std::out_of_range);
}

TEST_CASE("window rejects non-uniform sample spacing") {
    HealthWindow w(100.0, 0.5);
    w.push(0.0, Vec2::Zero(), Vec2::Zero());
    CHECK_THROWS_AS(w.push(0.7, Vec2::Zero(), Vec2::Zero()), std::invalid_argument);
}

TEST_CASE("activity variance sums the per-component population variances") {
    std::vector<Vec2> states;
    std::vector<Vec2> derivs;
    for (int i = 0; i < 200; ++i) {
        states.emplace_back(i % 2 == 0 ? 1.0 : -1.0, 0.0);
        derivs.emplace_back(Vec2::Zero());
    }
    const HealthWindow w = window_from(states, derivs);
    CHECK(activity_variance(w) == doctest::Approx(1.0));

    const HealthWindow constant = window_from({Vec2(2.0, -1.0)}, {Vec2::Zero()});
    CHECK(activity_variance(constant) == doctest::Approx(0.0));

    HealthWindow empty(100.0, 0.5);
    CHECK_THROWS_AS(activity_variance(empty), std::invalid_argument);
}

TEST_CASE("monotony decays from one as activity grows") {
    CHECK(monotony(0.0, 1.0) == doctest::Approx(1.0));
    CHECK(monotony(std::log(2.0), 1.0) == doctest::Approx(0.5));
    CHECK(monotony(1.0, 2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(monotony(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(monotony(1.0, 0.0), std::invalid_argument);

    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> dist(0.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double r1 = dist(rng);
        const double r2 = dist(rng);
        if (r1 < r2) {
            CHECK(monotony(r1, 1.3) > monotony(r2, 1.3));
        }
    }
}

TEST_CASE("freeze indicator responds to the mean speed") {
    std::vector<Vec2> states(100, Vec2::Zero());
    std::vector<Vec2> still(100, Vec2::Zero());
    CHECK(freeze_indicator(window_from(states, still), 2.0) == doctest::Approx(1.0));

    std::vector<Vec2> moving(100, Vec2(std::log(4.0), 0.0));
    CHECK(freeze_indicator(window_from(states, moving), 1.0) == doctest::Approx(0.25));
}

TEST_CASE("cycle indicator is high for a clean oscillation") {
    const double period = 20.0;
    const double dt_sample = 0.5;
    std::vector<Vec2> states;
    std::vector<Vec2> derivs;
    for (int i = 0; i < 200; ++i) {
        const double t = i * dt_sample;
        const double w = 2.0 * std::numbers::pi / period;
        states.emplace_back(std::sin(w * t), 0.0);
        derivs.emplace_back(w * std::cos(w * t), 0.0);
    }
    const HealthWindow w = window_from(states, derivs);
    CycleConfig cfg;
    const double m_cycle = cycle_indicator(w, cfg);
    const double m_freeze = freeze_indicator(w, cfg.kappa);
    CHECK(m_cycle >= 0.9 * (1.0 - m_freeze));
    CHECK(m_cycle <= 1.0);
}

TEST_CASE("cycle indicator is zero for constant and underfilled windows") {
    std::vector<Vec2> states(200, Vec2(0.7, 0.1));
    std::vector<Vec2> derivs(200, Vec2(0.3, 0.0));
    CHECK(cycle_indicator(window_from(states, derivs), CycleConfig{}) == 0.0);

    HealthWindow under(100.0, 0.5);
    for (int i = 0; i < 150; ++i) {
        under.push(i * 0.5, Vec2(std::sin(0.5 * i), 0.0), Vec2(1.0, 0.0));
    }
    CHECK(cycle_indicator(under, CycleConfig{}) == 0.0);
}

TEST_CASE("white noise stays below the cycling threshold, agreeing with a direct oracle") {
    std::mt19937 rng(12345u);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> u(200);
    for (double& x : u) x = noise(rng);

    const double c = max_autocorrelation(u, 10, 100);
    CHECK(c < 0.3);

    // Direct re-computation of the same estimator, written independently.
    double mean = 0.0;
    for (double x : u) mean += x;
    mean /= static_cast<double>(u.size());
    double denom = 0.0;
    for (double x : u) denom += (x - mean) * (x - mean);
    denom /= static_cast<double>(u.size());
    double best = -1e9;
    for (int lag = 10; lag <= 100; ++lag) {
        double num = 0.0;
        int count = 0;
        for (std::size_t i = 0; i + lag < u.size(); ++i) {
            num += (u[i] - mean) * (u[i + lag] - mean);
            ++count;
        }
        best = std::max(best, num / count / denom);
    }
    CHECK(c == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("autocorrelation rejects short series and degenerate lags") {
    std::vector<double> u(50, 1.0);
    CHECK_THROWS_AS(max_autocorrelation(u, 10, 100), std::invalid_argument);
    std::vector<double> u2(200, 1.0);
    CHECK_THROWS_AS(max_autocorrelation(u2, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(max_autocorrelation(u2, 20, 10), std::invalid_argument);
    CHECK(max_autocorrelation(u2, 10, 100) == 0.0);
}

TEST_CASE("indicator signatures of settled and cycling fast dynamics") {
    const HealthWindow quiet = fhn_window(0.0, 500.0);
    const IndicatorConfig cfg;
    const Indicators mq = compute_indicators(quiet, cfg);
    CHECK(mq.m_freeze > 0.9);
    CHECK(mq.m_cycle == 0.0);
    CHECK(mq.m_mono > 0.9);

    // On the limit cycle the derivative is large only during spikes, so the
    // freeze reading stays moderate while the cycle indicator sits close to
    // its ceiling 1 - m_freeze.
    const HealthWindow cycling = fhn_window(0.6, 500.0);
    const Indicators mc = compute_indicators(cycling, cfg);
    CHECK(mc.m_freeze < 0.75);
    CHECK(mc.m_cycle > 0.3);
    CHECK(mc.m_cycle > 0.9 * (1.0 - mc.m_freeze));
    CHECK(mc.m_mono < 0.5);
}

TEST_CASE("indicators stay inside [0, 1] for random windows") {
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec2> states;
        std::vector<Vec2> derivs;
        for (int i = 0; i < 200; ++i) {
            states.emplace_back(dist(rng), dist(rng));
            derivs.emplace_back(dist(rng), dist(rng));
        }
        const HealthWindow w = window_from(states, derivs);
        const Indicators m = compute_indicators(w, IndicatorConfig{});
        for (double value : {m.m_freeze, m.m_cycle, m.m_mono}) {
            CHECK(value >= 0.0);
            CHECK(value <= 1.0);
        }
        const BadnessWeights weights;
        CHECK(badness(m, weights) >= 0.0);
        CHECK(badness(m, weights) <= weights.w_f + weights.w_c + weights.w_m);
    }
}

TEST_CASE("badness is the weighted indicator sum") {
    const Indicators m{1.0, 0.0, 1.0};
    CHECK(badness(m, BadnessWeights{1.0, 1.0, 1.0}) == doctest::Approx(2.0));
    CHECK(badness(m, BadnessWeights{0.5, 2.0, 0.5}) == doctest::Approx(1.0));
    const Indicators mixed{0.4, 0.6, 0.1};
    CHECK(badness(mixed, BadnessWeights{0.5, 2.0, 0.5}) == doctest::Approx(1.45));
}

TEST_CASE("stress relaxes exponentially toward a held badness level") {
    StressState st;
    st.s = 0.0;
    st.tau_s = 50.0;
    for (int i = 0; i < 100; ++i) st = stress_step(st, 1.0, 0.5);
    CHECK(std::abs(st.s - (1.0 - std::exp(-1.0))) < 1e-4);

    StressState fixed;
    fixed.s = 0.7;
    fixed = stress_step(fixed, 0.7, 0.5);
    CHECK(fixed.s == doctest::Approx(0.7));

    StressState st2;
    CHECK_THROWS_AS(stress_step(st2, 1.0, 50.0), std::invalid_argument);
    CHECK_THROWS_AS(stress_step(st2, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("stress stays inside the convex hull of its history") {
    std::mt19937 rng(5u);
    std::uniform_real_distribution<double> dist(0.0, 2.0);
    StressState st;
    st.s = dist(rng);
    for (int i = 0; i < 1000; ++i) {
        st = stress_step(st, dist(rng), 0.5);
        CHECK(st.s >= 0.0);
        CHECK(st.s <= 2.0);
    }
}
