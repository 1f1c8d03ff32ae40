#include "regimeflow/integrator.hpp"

#include <doctest.h>

#include <Eigen/Core>

#include <cmath>
#include <vector>

using regimeflow::IntegrationError;
using regimeflow::integrate;
using regimeflow::rk4_step;
using Eigen::Vector2d;

TEST_CASE("zero field leaves the state unchanged") {
    const auto zero = [](const Vector2d&) -> Vector2d { return Vector2d::Zero(); };
    const Vector2d x0(1.25, -0.5);
    const Vector2d x1 = rk4_step(zero, x0, 0.1);
    CHECK(x1.x() == x0.x());
    CHECK(x1.y() == x0.y());
}

TEST_CASE("exponential decay reaches 1/e after unit time") {
    const auto decay = [](double x) { return -x; };
    const double x = integrate(decay, 1.0, 0.01, 100);
    CHECK(std::abs(x - std::exp(-1.0)) < 1e-7);
}

TEST_CASE("rotation conserves the radius and closes the loop") {
    const auto rot = [](const Vector2d& p) -> Vector2d { return {-p.y(), p.x()}; };
    double max_drift = 0.0;
    const Vector2d end = integrate(rot, Vector2d(1.0, 0.0), 0.01, 628,
                                   [&max_drift](long, double, const Vector2d& p) {
                                       max_drift = std::max(max_drift,
                                                            std::abs(p.squaredNorm() - 1.0));
                                   });
    CHECK(max_drift < 1e-9);
    CHECK((end - Vector2d(1.0, 0.0)).norm() < 0.01);
}

TEST_CASE("long rotation keeps the radius within 1e-6") {
    const auto rot = [](const Vector2d& p) -> Vector2d { return {-p.y(), p.x()}; };
    double max_drift = 0.0;
    integrate(rot, Vector2d(1.0, 0.0), 0.01, 10000,
              [&max_drift](long, double, const Vector2d& p) {
                  max_drift = std::max(max_drift, std::abs(p.squaredNorm() - 1.0));
              });
    CHECK(max_drift < 1e-6);
}

TEST_CASE("observer runs exactly n_steps times with increasing indices") {
    const auto decay = [](double x) { return -x; };
    std::vector<long> steps;
    std::vector<double> times;
    integrate(decay, 1.0, 0.5, 4, [&](long i, double t, double) {
        steps.push_back(i);
        times.push_back(t);
    });
    REQUIRE(steps.size() == 4);
    for (long i = 0; i < 4; ++i) {
        CHECK(steps[static_cast<std::size_t>(i)] == i);
        CHECK(times[static_cast<std::size_t>(i)] == doctest::Approx((i + 1) * 0.5));
    }

    int calls = 0;
    const double unchanged = integrate(decay, 1.0, 0.5, 0, [&calls](long, double, double) { ++calls; });
    CHECK(calls == 0);
    CHECK(unchanged == 1.0);
}

TEST_CASE("halving the step shrinks the error by a fourth-order factor") {
    const auto decay = [](double x) { return -x; };
    const auto error_at = [&decay](double dt) {
        const long n = std::lround(1.0 / dt);
        return std::abs(integrate(decay, 1.0, dt, n) - std::exp(-1.0));
    };
    const double ratio = error_at(0.01) / error_at(0.005);
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("non-finite stage values raise an error naming step and component") {
    const auto field = [](const Vector2d& p) -> Vector2d {
        if (p.x() > 1.5) return {std::nan(""), 0.0};
        return {p.x(), 0.0};
    };
    try {
        integrate(field, Vector2d(1.0, 0.0), 0.01, 100);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(e.step() > 0);
        CHECK(e.component() == 0);
        CHECK(e.stage() >= 1);
    }
}

TEST_CASE("non-positive dt is rejected") {
    const auto decay = [](double x) { return -x; };
    CHECK_THROWS_AS(rk4_step(decay, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rk4_step(decay, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("identical inputs give bitwise identical trajectories") {
    const auto field = [](const Vector2d& p) -> Vector2d {
        return {p.x() - p.x() * p.x() * p.x() / 3.0 - p.y(), 0.08 * (p.x() + 0.7 - 0.8 * p.y())};
    };
    std::vector<double> a, b;
    integrate(field, Vector2d(0.0, 0.0), 0.02, 1000,
              [&a](long, double, const Vector2d& p) {
                  a.push_back(p.x());
                  a.push_back(p.y());
              });
    integrate(field, Vector2d(0.0, 0.0), 0.02, 1000,
              [&b](long, double, const Vector2d& p) {
                  b.push_back(p.x());
                  b.push_back(p.y());
              });
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
