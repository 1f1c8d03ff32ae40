#include "regimeflow/plasticity.hpp"

#include <cmath>
#include <numbers>

namespace regimeflow {

double polar_radius(const Vec2& theta) {
    return theta.norm();
}

double polar_angle(const Vec2& theta) {
    if (theta.x() == 0.0 && theta.y() == 0.0) return 0.0;
    double phi = std::atan2(theta.y(), theta.x());
    if (phi <= -std::numbers::pi) phi = std::numbers::pi;
    return phi;
}

double ring_potential(const Vec2& theta, double k, double rho0) {
    const double d = theta.norm() - rho0;
    return 0.5 * k * d * d;
}

Vec2 ring_potential_grad(const Vec2& theta, double k, double rho0, double rho_eps) {
    const double rho = theta.norm();
    if (rho < rho_eps) return Vec2::Zero();
    return (k * (rho - rho0) / rho) * theta;
}

double gate(double s, const PlasticityConfig& cfg) {
    if (cfg.gate_kind == GateKind::Hard) {
        return s > cfg.s_c ? 1.0 : 0.0;
    }
    return 1.0 / (1.0 + std::exp(-cfg.gate_beta * (s - cfg.s_c)));
}

Vec2 plasticity_drift(const Vec2& theta, const PlasticityConfig& cfg) {
    switch (cfg.mode) {
        case PlasticityMode::GradientOnly:
            return -cfg.eta * ring_potential_grad(theta, cfg.k, cfg.rho0, cfg.rho_eps);
        case PlasticityMode::CurlAugmented:
            return -cfg.eta * ring_potential_grad(theta, cfg.k, cfg.rho0, cfg.rho_eps) +
                   curl_field(theta, cfg.omega);
        case PlasticityMode::ExternalSweep:
            return -cfg.eta * ring_potential_grad(theta, cfg.k, cfg.rho0, cfg.rho_eps) +
                   curl_field(theta, cfg.omega_sweep);
    }
    return Vec2::Zero();
}

Vec2 plasticity_rhs(const Vec2& theta, double s, const PlasticityConfig& cfg) {
    if (cfg.mode == PlasticityMode::ExternalSweep) return plasticity_drift(theta, cfg);
    return gate(s, cfg) * plasticity_drift(theta, cfg);
}

}  // namespace regimeflow
