#include "regimeflow/plasticity.hpp"

#include "regimeflow/integrator.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace regimeflow;

TEST_CASE("polar view of the structural state") {
    CHECK(polar_radius(Vec2(3.0, 4.0)) == doctest::Approx(5.0));
    CHECK(polar_angle(Vec2(1.0, 1.0)) == doctest::Approx(std::numbers::pi / 4.0));
    CHECK(polar_angle(Vec2(-1.0, 0.0)) == doctest::Approx(std::numbers::pi));
    CHECK(polar_angle(Vec2(-1.0, -0.0)) == doctest::Approx(std::numbers::pi));
    CHECK(polar_angle(Vec2(0.0, 0.0)) == 0.0);
}

TEST_CASE("ring potential vanishes on the preferred circle and grows quadratically off it") {
    CHECK(ring_potential(Vec2(0.8, 0.0), 1.0, 0.8) == doctest::Approx(0.0));
    CHECK(ring_potential(Vec2(0.0, 0.0), 1.0, 0.8) == doctest::Approx(0.32));
    CHECK(ring_potential(Vec2(1.6, 0.0), 2.0, 0.8) == doctest::Approx(0.64));
    const double phi = 1.1;
    CHECK(ring_potential(0.8 * Vec2(std::cos(phi), std::sin(phi)), 1.0, 0.8) ==
          doctest::Approx(0.0));
}

TEST_CASE("ring potential gradient is radial and vanishes on the circle") {
    const Vec2 on_circle = 0.8 * Vec2(std::cos(0.3), std::sin(0.3));
    CHECK(ring_potential_grad(on_circle, 1.0, 0.8).norm() < 1e-12);

    const Vec2 g = ring_potential_grad(Vec2(1.6, 0.0), 1.0, 0.8);
    CHECK(g.x() == doctest::Approx(0.8));
    CHECK(g.y() == doctest::Approx(0.0));

    CHECK(ring_potential_grad(Vec2(1e-12, 0.0), 1.0, 0.8).norm() == 0.0);
}

TEST_CASE("ring potential gradient matches central finite differences at random points") {
    std::mt19937 rng(2024u);
    std::uniform_real_distribution<double> radius(0.1, 3.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    const double h = 1e-5;
    const double k = 1.3;
    const double rho0 = 0.8;
    for (int i = 0; i < 100; ++i) {
        const double r = radius(rng);
        const double a = angle(rng);
        const Vec2 p = r * Vec2(std::cos(a), std::sin(a));
        const Vec2 grad = ring_potential_grad(p, k, rho0);
        const Vec2 fd((ring_potential(p + Vec2(h, 0.0), k, rho0) -
                       ring_potential(p - Vec2(h, 0.0), k, rho0)) /
                          (2.0 * h),
                      (ring_potential(p + Vec2(0.0, h), k, rho0) -
                       ring_potential(p - Vec2(0.0, h), k, rho0)) /
                          (2.0 * h));
        const double scale = std::max(grad.norm(), 1e-3);
        CHECK((grad - fd).norm() / scale < 1e-6);
    }
}

TEST_CASE("curl field rotates the state at rate omega") {
    const Vec2 r = curl_field(Vec2(1.0, 2.0), 0.01);
    CHECK(r.x() == doctest::Approx(-0.02));
    CHECK(r.y() == doctest::Approx(0.01));
    const Vec2 p(0.3, -0.7);
    CHECK(curl_field(p, 0.5).dot(p) == doctest::Approx(0.0));
}

TEST_CASE("hard gate switches exactly at the threshold, smooth gate is logistic") {
    PlasticityConfig cfg;
    cfg.s_c = 0.9;
    cfg.gate_kind = GateKind::Hard;
    CHECK(gate(0.89, cfg) == 0.0);
    CHECK(gate(0.9, cfg) == 0.0);
    CHECK(gate(0.91, cfg) == 1.0);

    cfg.gate_kind = GateKind::Smooth;
    CHECK(gate(0.9, cfg) == doctest::Approx(0.5));
    CHECK(gate(2.0, cfg) > 0.99);
    CHECK(gate(0.0, cfg) < 0.01);
}

TEST_CASE("closed gate produces an exactly zero structural update") {
    PlasticityConfig cfg;
    cfg.mode = PlasticityMode::CurlAugmented;
    const Vec2 theta(1.1, -0.4);
    const Vec2 rhs = plasticity_rhs(theta, 0.0, cfg);
    CHECK(rhs.x() == 0.0);
    CHECK(rhs.y() == 0.0);

    const Vec2 next = rk4_step(
        [&cfg](const Vec2& th) { return plasticity_rhs(th, 0.0, cfg); }, theta, 0.02);
    CHECK(next.x() == theta.x());
    CHECK(next.y() == theta.y());
}

TEST_CASE("mode drift structure on the preferred circle") {
    PlasticityConfig cfg;
    const Vec2 on_circle(0.8, 0.0);

    cfg.mode = PlasticityMode::GradientOnly;
    CHECK(plasticity_drift(on_circle, cfg).norm() < 1e-12);

    cfg.mode = PlasticityMode::CurlAugmented;
    const Vec2 d = plasticity_drift(on_circle, cfg);
    CHECK(d.x() == doctest::Approx(0.0));
    CHECK(d.y() == doctest::Approx(0.008));

    cfg.mode = PlasticityMode::ExternalSweep;
    const Vec2 s = plasticity_rhs(on_circle, -100.0, cfg);
    CHECK(s.y() == doctest::Approx(cfg.omega_sweep * 0.8));
}

TEST_CASE("rotational term never changes the radius budget of the drift") {
    std::mt19937 rng(17u);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    PlasticityConfig cfg;
    cfg.mode = PlasticityMode::CurlAugmented;
    for (int i = 0; i < 200; ++i) {
        const Vec2 theta(coord(rng), coord(rng));
        const double rho = polar_radius(theta);
        if (rho < 1e-3) continue;
        const Vec2 drift = plasticity_drift(theta, cfg);
        const double radial_rate = theta.dot(drift);
        const double expected = -cfg.eta * cfg.k * (rho - cfg.rho0) * rho;
        CHECK(radial_rate == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("gradient-only flow descends the ring potential monotonically") {
    PlasticityConfig cfg;
    cfg.mode = PlasticityMode::GradientOnly;
    Vec2 theta(1.3, 0.5);
    double prev = ring_potential(theta, cfg.k, cfg.rho0);
    for (int i = 0; i < 20000; ++i) {
        theta = rk4_step([&cfg](const Vec2& th) { return plasticity_drift(th, cfg); }, theta,
                         0.02);
        const double value = ring_potential(theta, cfg.k, cfg.rho0);
        CHECK(value <= prev + 1e-12);
        prev = value;
    }
    CHECK(polar_radius(theta) == doctest::Approx(0.8).epsilon(1e-6));
}

TEST_CASE("external sweep rotates at the sweep rate with the radius pinned") {
    PlasticityConfig cfg;
    cfg.mode = PlasticityMode::ExternalSweep;
    cfg.omega_sweep = 0.0005;
    Vec2 theta(0.8, 0.0);
    const double dt = 0.02;
    const long n = 50000;  // 1000 time units
    theta = integrate([&cfg](const Vec2& th) { return plasticity_drift(th, cfg); }, theta, dt, n);
    const double expected_phi = cfg.omega_sweep * dt * static_cast<double>(n);
    CHECK(std::abs(polar_angle(theta) - expected_phi) < 1e-8);
    CHECK(std::abs(polar_radius(theta) - 0.8) < 1e-9);
}
