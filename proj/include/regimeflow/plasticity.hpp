#pragma once

#include "regimeflow/fhn.hpp"

namespace regimeflow {

// The structural state theta = (theta1, theta2) evolves slowly; theta1 is
// fed to the fast layer as its drive. The polar view (rho, phi) is a pure
// function of theta.
double polar_radius(const Vec2& theta);
// Angle in (-pi, pi]; by convention (0, 0) maps to 0.
double polar_angle(const Vec2& theta);

// (k/2) (|theta| - rho0)^2: a ring of minima at radius rho0.
double ring_potential(const Vec2& theta, double k, double rho0);

// Gradient k (rho - rho0) theta / rho, taken as zero within rho_eps of the
// origin where the direction is undefined.
Vec2 ring_potential_grad(const Vec2& theta, double k, double rho0, double rho_eps = 1e-9);

// omega * (-theta2, theta1): rotation about the origin, everywhere
// orthogonal to the radial direction.
inline Vec2 curl_field(const Vec2& theta, double omega) {
    return Vec2(-omega * theta.y(), omega * theta.x());
}

enum class PlasticityMode {
    GradientOnly,    // gated pure descent of the ring potential
    CurlAugmented,   // gated descent plus the rotational term
    ExternalSweep,   // ungated rotation at omega_sweep plus radial relaxation
};

enum class GateKind { Hard, Smooth };

struct PlasticityConfig {
    PlasticityMode mode = PlasticityMode::CurlAugmented;
    double eta = 0.05;
    double omega = 0.01;
    double k = 1.0;
    double rho0 = 0.8;
    double s_c = 0.9;
    GateKind gate_kind = GateKind::Hard;
    double gate_beta = 20.0;
    double omega_sweep = 0.0005;
    double rho_eps = 1e-9;
};

// Hard: 1 when s > s_c, 0 otherwise (0 at the boundary).
// Smooth: logistic 1 / (1 + exp(-gate_beta (s - s_c))).
double gate(double s, const PlasticityConfig& cfg);

// Structural drift with the gate factored out. The sweep mode has no gate.
Vec2 plasticity_drift(const Vec2& theta, const PlasticityConfig& cfg);

// Structural drift at stress level s. GradientOnly and CurlAugmented are
// scaled by the gate; ExternalSweep ignores s entirely.
Vec2 plasticity_rhs(const Vec2& theta, double s, const PlasticityConfig& cfg);

}  // namespace regimeflow
