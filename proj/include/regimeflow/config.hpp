#pragma once

#include "regimeflow/fhn.hpp"
#include "regimeflow/health.hpp"
#include "regimeflow/plasticity.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace regimeflow {

enum class Scenario {
    Reducible,    // gradient-only structural drift
    Irreducible,  // gradient plus rotational drift
    Swept,        // ungated external sweep of the drive
};

std::string scenario_name(Scenario s);
Scenario parse_scenario(const std::string& name);

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Every knob of a scenario run, flat so it maps one-to-one onto the flat
// JSON config document.
struct RunConfig {
    Scenario scenario = Scenario::Irreducible;

    double horizon = 20000.0;
    double dt = 0.02;
    double dt_sample = 0.5;
    double dt_out = 0.5;

    // fast layer
    double a = 0.7;
    double b = 0.8;
    double epsilon = 0.08;

    // health window and indicators
    double window_length = 100.0;
    double gamma = 1.0;
    double kappa = 2.0;
    double lag_min = 5.0;
    double lag_max = 50.0;
    double w_f = 0.5;
    double w_c = 2.0;
    double w_m = 0.5;
    double tau_s = 50.0;
    double s_c = 0.9;

    // structural layer
    double eta = 0.05;
    double omega = 0.01;
    double k = 1.0;
    double rho0 = 0.8;
    GateKind gate_kind = GateKind::Hard;
    double gate_beta = 20.0;
    double omega_sweep = 0.0005;

    // classification and event detection
    double sigma_lo = 0.15;
    double sigma_hi = 0.35;
    double dwell_min = 300.0;

    // initial conditions
    double u0 = 0.0;
    double v0 = 0.0;
    double theta1_0 = 0.8;
    double theta2_0 = 0.0;
    double s0 = 0.0;
};

RunConfig default_config(Scenario s);

// Throws ConfigError naming the offending field.
void validate_config(const RunConfig& cfg);

// Derived views consumed by the simulation loop.
FhnParams fhn_params(const RunConfig& cfg, double theta1);
IndicatorConfig indicator_config(const RunConfig& cfg);
BadnessWeights badness_weights(const RunConfig& cfg);
PlasticityConfig plasticity_config(const RunConfig& cfg);
ClassifierConfig classifier_config(const RunConfig& cfg);

// Flat JSON document with one key per field. Parsing starts from base and
// rejects unknown keys; values are type-checked. The emitted document reloads
// to an identical config.
nlohmann::ordered_json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j, const RunConfig& base);
RunConfig load_config_file(const std::string& path, const RunConfig& base);

bool operator==(const RunConfig& lhs, const RunConfig& rhs);

}  // namespace regimeflow
