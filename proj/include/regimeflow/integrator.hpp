#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace regimeflow {

// Thrown when an integration step produces a non-finite value. Carries the
// step index (-1 for a bare rk4_step, filled in by integrate), the RK4 stage
// that blew up (1..4, 0 for the combined update) and the first offending
// state component.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(long step, int stage, int component)
        : std::runtime_error(describe(step, stage, component)),
          step_(step),
          stage_(stage),
          component_(component) {}

    long step() const noexcept { return step_; }
    int stage() const noexcept { return stage_; }
    int component() const noexcept { return component_; }

    IntegrationError at_step(long step) const {
        return IntegrationError(step, stage_, component_);
    }

private:
    static std::string describe(long step, int stage, int component);

    long step_;
    int stage_;
    int component_;
};

namespace detail {

inline int first_non_finite(double v) {
    return std::isfinite(v) ? -1 : 0;
}

template <typename Derived>
int first_non_finite(const Eigen::MatrixBase<Derived>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v(i))) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace detail

// One classical fourth-order Runge-Kutta update for an autonomous field:
// x + (dt/6)(k1 + 2 k2 + 2 k3 + k4). State is a plain double or any Eigen
// dense vector; Field maps State to State. Every stage derivative and the
// combined update are checked for finiteness.
template <typename State, typename Field>
State rk4_step(const Field& field, const State& x, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");

    const State k1 = field(x);
    if (int c = detail::first_non_finite(k1); c >= 0) throw IntegrationError(-1, 1, c);
    const State k2 = field(State(x + (0.5 * dt) * k1));
    if (int c = detail::first_non_finite(k2); c >= 0) throw IntegrationError(-1, 2, c);
    const State k3 = field(State(x + (0.5 * dt) * k2));
    if (int c = detail::first_non_finite(k3); c >= 0) throw IntegrationError(-1, 3, c);
    const State k4 = field(State(x + dt * k3));
    if (int c = detail::first_non_finite(k4); c >= 0) throw IntegrationError(-1, 4, c);

    State next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (int c = detail::first_non_finite(next); c >= 0) throw IntegrationError(-1, 0, c);
    return next;
}

// Fixed-step integration over n_steps RK4 updates. After step i the observer
// is called as observer(i, (i + 1) * dt, state); it runs exactly n_steps
// times. Errors from rk4_step are rethrown with the step index attached.
template <typename State, typename Field, typename Observer>
State integrate(const Field& field, State x, double dt, long n_steps, Observer&& observer) {
    if (n_steps < 0) throw std::invalid_argument("integrate: n_steps must be non-negative");
    for (long i = 0; i < n_steps; ++i) {
        try {
            x = rk4_step(field, x, dt);
        } catch (const IntegrationError& e) {
            throw e.at_step(i);
        }
        observer(i, static_cast<double>(i + 1) * dt, x);
    }
    return x;
}

template <typename State, typename Field>
State integrate(const Field& field, State x, double dt, long n_steps) {
    return integrate(field, std::move(x), dt, n_steps,
                     [](long, double, const State&) {});
}

}  // namespace regimeflow
