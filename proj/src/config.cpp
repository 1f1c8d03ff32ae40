#include "regimeflow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace regimeflow {
namespace {

bool near_integer_ratio(double num, double den) {
    const double ratio = num / den;
    return std::abs(ratio - std::round(ratio)) < 1e-9 && std::round(ratio) >= 1.0;
}

std::string gate_name(GateKind g) {
    return g == GateKind::Hard ? "hard" : "smooth";
}

GateKind parse_gate(const std::string& name) {
    if (name == "hard") return GateKind::Hard;
    if (name == "smooth") return GateKind::Smooth;
    throw ConfigError("gate", "unknown gate kind '" + name + "' (expected hard or smooth)");
}

}  // namespace

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Reducible: return "reducible";
        case Scenario::Irreducible: return "irreducible";
        case Scenario::Swept: return "swept";
    }
    return "?";
}

Scenario parse_scenario(const std::string& name) {
    if (name == "reducible") return Scenario::Reducible;
    if (name == "irreducible") return Scenario::Irreducible;
    if (name == "swept") return Scenario::Swept;
    throw ConfigError("scenario", "unknown scenario '" + name +
                                      "' (expected reducible, irreducible or swept)");
}

RunConfig default_config(Scenario s) {
    RunConfig cfg;
    cfg.scenario = s;
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    const auto require = [](bool ok, const char* field, const char* message) {
        if (!ok) throw ConfigError(field, message);
    };

    require(cfg.horizon > 0.0, "horizon", "must be positive");
    require(cfg.dt > 0.0, "dt", "must be positive");
    require(cfg.dt_sample > 0.0, "dt_sample", "must be positive");
    require(cfg.dt_out > 0.0, "dt_out", "must be positive");
    require(near_integer_ratio(cfg.dt_sample, cfg.dt), "dt_sample",
            "must be an integer multiple of dt");
    require(near_integer_ratio(cfg.dt_out, cfg.dt_sample), "dt_out",
            "must be an integer multiple of dt_sample");
    require(near_integer_ratio(cfg.horizon, cfg.dt_sample), "horizon",
            "must be an integer multiple of dt_sample");

    try {
        FhnParams p{cfg.a, cfg.b, cfg.epsilon, 0.0};
        validate(p);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("epsilon", e.what());
    }

    require(cfg.window_length >= cfg.dt_sample, "window_length",
            "must cover at least one sample interval");
    require(cfg.gamma > 0.0, "gamma", "must be positive");
    require(cfg.kappa > 0.0, "kappa", "must be positive");
    require(cfg.lag_min > 0.0, "lag_min", "must be positive");
    require(cfg.lag_max > cfg.lag_min, "lag_max", "must exceed lag_min");
    require(cfg.lag_min >= cfg.dt_sample, "lag_min", "must be at least dt_sample");

    const long capacity = std::lround(cfg.window_length / cfg.dt_sample);
    const long lag_max_samples = std::lround(cfg.lag_max / cfg.dt_sample);
    require(capacity >= 2 * lag_max_samples, "lag_max",
            "window must hold at least 2 * lag_max samples");

    require(cfg.w_f >= 0.0 && cfg.w_c >= 0.0 && cfg.w_m >= 0.0, "w_f",
            "weights must be non-negative");
    require(cfg.w_f + cfg.w_c + cfg.w_m > 0.0, "w_f", "weights must not all vanish");
    require(cfg.tau_s > 0.0, "tau_s", "must be positive");
    require(cfg.dt_sample < cfg.tau_s, "tau_s", "must exceed dt_sample");
    require(cfg.s_c > 0.0, "s_c", "must be positive");

    require(cfg.eta > 0.0, "eta", "must be positive");
    require(cfg.k > 0.0, "k", "must be positive");
    require(cfg.rho0 > 0.0, "rho0", "must be positive");
    require(cfg.gate_beta > 0.0, "gate_beta", "must be positive");
    require(cfg.omega_sweep != 0.0 || cfg.scenario != Scenario::Swept, "omega_sweep",
            "must be non-zero for the swept scenario");

    require(cfg.sigma_lo > 0.0, "sigma_lo", "must be positive");
    require(cfg.sigma_hi > cfg.sigma_lo, "sigma_hi", "must exceed sigma_lo");
    require(cfg.dwell_min >= 0.0, "dwell_min", "must be non-negative");

    require(std::isfinite(cfg.u0) && std::isfinite(cfg.v0), "u0",
            "initial fast state must be finite");
    require(std::isfinite(cfg.theta1_0) && std::isfinite(cfg.theta2_0), "theta1_0",
            "initial structural state must be finite");
    require(std::isfinite(cfg.s0) && cfg.s0 >= 0.0, "s0", "must be finite and non-negative");
}

FhnParams fhn_params(const RunConfig& cfg, double theta1) {
    return FhnParams{cfg.a, cfg.b, cfg.epsilon, theta1};
}

IndicatorConfig indicator_config(const RunConfig& cfg) {
    IndicatorConfig ic;
    ic.gamma = cfg.gamma;
    ic.kappa = cfg.kappa;
    ic.lag_min_time = cfg.lag_min;
    ic.lag_max_time = cfg.lag_max;
    return ic;
}

BadnessWeights badness_weights(const RunConfig& cfg) {
    return BadnessWeights{cfg.w_f, cfg.w_c, cfg.w_m};
}

PlasticityConfig plasticity_config(const RunConfig& cfg) {
    PlasticityConfig pc;
    switch (cfg.scenario) {
        case Scenario::Reducible: pc.mode = PlasticityMode::GradientOnly; break;
        case Scenario::Irreducible: pc.mode = PlasticityMode::CurlAugmented; break;
        case Scenario::Swept: pc.mode = PlasticityMode::ExternalSweep; break;
    }
    pc.eta = cfg.eta;
    pc.omega = cfg.omega;
    pc.k = cfg.k;
    pc.rho0 = cfg.rho0;
    pc.s_c = cfg.s_c;
    pc.gate_kind = cfg.gate_kind;
    pc.gate_beta = cfg.gate_beta;
    pc.omega_sweep = cfg.omega_sweep;
    return pc;
}

ClassifierConfig classifier_config(const RunConfig& cfg) {
    return ClassifierConfig{cfg.sigma_lo, cfg.sigma_hi};
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario_name(cfg.scenario);
    j["horizon"] = cfg.horizon;
    j["dt"] = cfg.dt;
    j["dt_sample"] = cfg.dt_sample;
    j["dt_out"] = cfg.dt_out;
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    j["epsilon"] = cfg.epsilon;
    j["window_length"] = cfg.window_length;
    j["gamma"] = cfg.gamma;
    j["kappa"] = cfg.kappa;
    j["lag_min"] = cfg.lag_min;
    j["lag_max"] = cfg.lag_max;
    j["w_f"] = cfg.w_f;
    j["w_c"] = cfg.w_c;
    j["w_m"] = cfg.w_m;
    j["tau_s"] = cfg.tau_s;
    j["s_c"] = cfg.s_c;
    j["eta"] = cfg.eta;
    j["omega"] = cfg.omega;
    j["k"] = cfg.k;
    j["rho0"] = cfg.rho0;
    j["gate"] = gate_name(cfg.gate_kind);
    j["gate_beta"] = cfg.gate_beta;
    j["omega_sweep"] = cfg.omega_sweep;
    j["sigma_lo"] = cfg.sigma_lo;
    j["sigma_hi"] = cfg.sigma_hi;
    j["dwell_min"] = cfg.dwell_min;
    j["u0"] = cfg.u0;
    j["v0"] = cfg.v0;
    j["theta1_0"] = cfg.theta1_0;
    j["theta2_0"] = cfg.theta2_0;
    j["s0"] = cfg.s0;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j, const RunConfig& base) {
    if (!j.is_object()) throw ConfigError("config", "document must be a JSON object");

    static const std::set<std::string> known = {
        "scenario", "horizon", "dt", "dt_sample", "dt_out", "a", "b", "epsilon",
        "window_length", "gamma", "kappa", "lag_min", "lag_max", "w_f", "w_c", "w_m",
        "tau_s", "s_c", "eta", "omega", "k", "rho0", "gate", "gate_beta", "omega_sweep",
        "sigma_lo", "sigma_hi", "dwell_min", "u0", "v0", "theta1_0", "theta2_0", "s0"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw ConfigError(key, "unknown config key");
    }

    RunConfig cfg = base;
    const auto number = [&j](const char* key, double& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_number()) throw ConfigError(key, "must be a number");
        out = j.at(key).get<double>();
    };

    if (j.contains("scenario")) {
        if (!j.at("scenario").is_string()) throw ConfigError("scenario", "must be a string");
        cfg.scenario = parse_scenario(j.at("scenario").get<std::string>());
    }
    number("horizon", cfg.horizon);
    number("dt", cfg.dt);
    number("dt_sample", cfg.dt_sample);
    number("dt_out", cfg.dt_out);
    number("a", cfg.a);
    number("b", cfg.b);
    number("epsilon", cfg.epsilon);
    number("window_length", cfg.window_length);
    number("gamma", cfg.gamma);
    number("kappa", cfg.kappa);
    number("lag_min", cfg.lag_min);
    number("lag_max", cfg.lag_max);
    number("w_f", cfg.w_f);
    number("w_c", cfg.w_c);
    number("w_m", cfg.w_m);
    number("tau_s", cfg.tau_s);
    number("s_c", cfg.s_c);
    number("eta", cfg.eta);
    number("omega", cfg.omega);
    number("k", cfg.k);
    number("rho0", cfg.rho0);
    if (j.contains("gate")) {
        if (!j.at("gate").is_string()) throw ConfigError("gate", "must be a string");
        cfg.gate_kind = parse_gate(j.at("gate").get<std::string>());
    }
    number("gate_beta", cfg.gate_beta);
    number("omega_sweep", cfg.omega_sweep);
    number("sigma_lo", cfg.sigma_lo);
    number("sigma_hi", cfg.sigma_hi);
    number("dwell_min", cfg.dwell_min);
    number("u0", cfg.u0);
    number("v0", cfg.v0);
    number("theta1_0", cfg.theta1_0);
    number("theta2_0", cfg.theta2_0);
    number("s0", cfg.s0);
    return cfg;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", std::string("parse error: ") + e.what());
    }
    return config_from_json(j, base);
}

bool operator==(const RunConfig& lhs, const RunConfig& rhs) {
    return config_to_json(lhs) == config_to_json(rhs);
}

}  // namespace regimeflow
