#include "regimeflow/config.hpp"
#include "regimeflow/coupled.hpp"
#include "regimeflow/io.hpp"
#include "regimeflow/plasticity.hpp"
#include "regimeflow/reducibility.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace regimeflow;

struct RunArgs {
    std::string config_path;
    std::string out_dir = "out";
    bool plots = false;
    nlohmann::json overrides = nlohmann::json::object();
};

void add_run_options(CLI::App* cmd, RunArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file applied over the defaults");
    cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
    cmd->add_flag("--plots", args.plots, "also write the SVG panel set");

    const auto text = [cmd, &args](const char* flag, const char* key, const char* desc) {
        cmd->add_option_function<std::string>(
            flag, [&args, key](const std::string& v) { args.overrides[key] = v; }, desc);
    };
    const auto number = [cmd, &args](const char* flag, const char* key, const char* desc) {
        cmd->add_option_function<double>(
            flag, [&args, key](double v) { args.overrides[key] = v; }, desc);
    };

    text("--scenario", "scenario", "reducible, irreducible or swept");
    number("--horizon", "horizon", "total simulated time");
    number("--dt", "dt", "integration step");
    number("--dt-sample", "dt_sample", "health sampling interval");
    number("--dt-out", "dt_out", "output row interval");
    number("--a", "a", "fast-layer recovery offset");
    number("--b", "b", "fast-layer recovery slope");
    number("--epsilon", "epsilon", "fast-layer timescale separation");
    number("--window-length", "window_length", "health window length");
    number("--gamma", "gamma", "monotony decay rate");
    number("--kappa", "kappa", "freeze decay rate");
    number("--lag-min", "lag_min", "shortest autocorrelation lag (time units)");
    number("--lag-max", "lag_max", "longest autocorrelation lag (time units)");
    number("--w-f", "w_f", "freeze weight in badness");
    number("--w-c", "w_c", "cycle weight in badness");
    number("--w-m", "w_m", "monotony weight in badness");
    number("--tau-s", "tau_s", "stress relaxation time");
    number("--s-c", "s_c", "gate threshold");
    number("--eta", "eta", "gradient descent rate");
    number("--omega", "omega", "rotational drift rate");
    number("--k", "k", "radial stiffness");
    number("--rho0", "rho0", "preferred structural radius");
    text("--gate", "gate", "hard or smooth");
    number("--gate-beta", "gate_beta", "smooth gate steepness");
    number("--omega-sweep", "omega_sweep", "sweep rotation rate");
    number("--sigma-lo", "sigma_lo", "quiescent classification threshold");
    number("--sigma-hi", "sigma_hi", "oscillatory classification threshold");
    number("--dwell-min", "dwell_min", "minimum persistent regime duration");
    number("--u0", "u0", "initial fast u");
    number("--v0", "v0", "initial fast v");
    number("--theta1-0", "theta1_0", "initial structural theta1");
    number("--theta2-0", "theta2_0", "initial structural theta2");
    number("--s0", "s0", "initial stress level");
}

int do_run(const RunArgs& args) {
    RunConfig cfg = default_config(Scenario::Irreducible);
    if (!args.config_path.empty()) cfg = load_config_file(args.config_path, cfg);
    if (!args.overrides.empty()) cfg = config_from_json(args.overrides, cfg);
    validate_config(cfg);

    const RunResult result = run_scenario(cfg);
    const std::vector<std::string> files = write_run_outputs(args.out_dir, result, args.plots);

    std::cout << "scenario: " << scenario_name(cfg.scenario) << '\n';
    std::cout << "switches: " << result.summary.n_switches
              << " (final third: " << result.summary.n_switches_final_third << ")\n";
    std::cout << "mean badness after burn-in: "
              << format_g9(result.summary.mean_badness_post_burnin) << '\n';
    std::cout << "final structural speed: " << format_g9(result.summary.final_theta_speed)
              << '\n';
    if (result.summary.inter_switch_cv) {
        std::cout << "inter-switch cv: " << format_g9(*result.summary.inter_switch_cv) << '\n';
    } else {
        std::cout << "inter-switch cv: n/a\n";
    }
    for (const std::string& f : files) std::cout << "wrote: " << f << '\n';
    return 0;
}

struct ScanArgs {
    ScanConfig scan;
    FhnParams base;
    double u0 = 0.0;
    double v0 = 0.0;
    std::string out_path = "scan.csv";
};

int do_scan(ScanArgs& args) {
    args.scan.initial_state = Vec2(args.u0, args.v0);
    const ScanResult result = bifurcation_scan(args.scan, args.base);

    if (args.out_path == "-") {
        write_scan_csv(std::cout, result);
    } else {
        std::ofstream out(args.out_path);
        if (!out) {
            std::cerr << "error: cannot open '" << args.out_path << "' for writing\n";
            return 2;
        }
        write_scan_csv(out, result);
        std::cout << "wrote: " << args.out_path << '\n';
    }
    for (const auto& [lo, hi] : result.boundaries) {
        std::cout << "label change between theta1 = " << format_g9(lo) << " and "
                  << format_g9(hi) << '\n';
    }
    for (const auto& [lo, hi] : result.onsets) {
        std::cout << "oscillation onset between theta1 = " << format_g9(lo) << " and "
                  << format_g9(hi) << '\n';
    }
    return 0;
}

bool report_line(const char* name, double value, double tol) {
    const bool ok = value <= tol;
    std::cout << (ok ? "PASS" : "FAIL") << ' ' << name << ": " << format_g9(value)
              << " (tolerance " << format_g9(tol) << ")\n";
    return ok;
}

struct OjaArgs {
    std::vector<double> c = {2.0, 0.0, 0.0, 1.0};
    std::vector<double> w0 = {0.6, 0.8};
    double dt = 0.01;
    long steps = 2000;
    double tol_angle = 1e-3;
    double tol_norm = 1e-6;
    double tol_mono = 1e-10;
};

int do_check_oja(const OjaArgs& args) {
    Eigen::Matrix2d c;
    c << args.c[0], args.c[1], args.c[2], args.c[3];
    const OjaResult result = oja_simulate(c, Vec2(args.w0[0], args.w0[1]), args.dt, args.steps);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c);
    const Vec2 principal = es.eigenvectors().col(1);
    const Vec2 w = result.final_w();
    const double cosine = std::min(1.0, std::abs(w.normalized().dot(principal)));
    const double angle = std::acos(cosine);
    const double norm_err = std::abs(w.norm() - 1.0);
    const MonotonicityReport mono = descent_along_series(result.t, result.v, args.tol_mono);

    bool ok = true;
    ok &= report_line("angle to principal eigenvector", angle, args.tol_angle);
    ok &= report_line("weight norm error", norm_err, args.tol_norm);
    ok &= report_line("largest value increase", mono.max_increase, args.tol_mono);
    return ok ? 0 : 1;
}

struct MinimaxArgs {
    double x0 = 1.0;
    double y0 = 0.0;
    double dt = 0.01;
    double t = 100.0;
    double tol = 1e-6;
};

int do_check_minimax(const MinimaxArgs& args) {
    const long steps = std::lround(args.t / args.dt);
    const MinimaxResult result = minimax_simulate(Vec2(args.x0, args.y0), args.dt, steps);
    const bool ok = report_line("conserved radius drift", result.max_drift(), args.tol);
    return ok ? 0 : 1;
}

struct FieldArgs {
    std::string field = "reducible";
    std::string potential = "auto";
    std::vector<double> domain;
    int n = 21;
    double eta = 0.05;
    double omega = 0.01;
    double k = 1.0;
    double rho0 = 0.8;
};

VecField make_field(const FieldArgs& args) {
    if (args.field == "gradient") {
        return [](const Vec2& p) { return Vec2(-p); };
    }
    if (args.field == "rotation") {
        const double omega = args.omega;
        return [omega](const Vec2& p) { return curl_field(p, omega); };
    }
    if (args.field == "reducible") {
        const FieldArgs a = args;
        return [a](const Vec2& p) {
            return Vec2(-a.eta * ring_potential_grad(p, a.k, a.rho0));
        };
    }
    if (args.field == "irreducible") {
        const FieldArgs a = args;
        return [a](const Vec2& p) {
            return Vec2(-a.eta * ring_potential_grad(p, a.k, a.rho0) + curl_field(p, a.omega));
        };
    }
    throw std::invalid_argument("unknown field '" + args.field +
                                "' (expected gradient, rotation, reducible or irreducible)");
}

ScalarField make_potential(const FieldArgs& args) {
    std::string name = args.potential;
    if (name == "auto") {
        name = (args.field == "reducible" || args.field == "irreducible") ? "ring" : "quadratic";
    }
    if (name == "quadratic") {
        return [](const Vec2& p) { return 0.5 * p.squaredNorm(); };
    }
    if (name == "ring") {
        const double k = args.k;
        const double rho0 = args.rho0;
        return [k, rho0](const Vec2& p) { return ring_potential(p, k, rho0); };
    }
    throw std::invalid_argument("unknown potential '" + name + "' (expected quadratic or ring)");
}

Rect make_domain(const FieldArgs& args) {
    if (!args.domain.empty()) {
        return Rect{args.domain[0], args.domain[1], args.domain[2], args.domain[3]};
    }
    if (args.field == "reducible" || args.field == "irreducible") {
        return Rect{0.3, 1.5, 0.3, 1.5};
    }
    return Rect{-2.0, 2.0, -2.0, 2.0};
}

struct DescentArgs {
    FieldArgs field;
    double tol = 1e-8;
    double fd_step = 1e-5;
};

int do_check_descent(const DescentArgs& args) {
    const DescentReport report = descent_check(make_field(args.field), make_potential(args.field),
                                               make_domain(args.field), args.field.n, args.tol,
                                               args.fd_step);
    std::cout << "grid points: " << report.n_points << '\n';
    std::cout << "largest inner product grad V . F: " << format_g9(report.max_inner) << " at ("
              << format_g9(report.worst_point.x()) << ", " << format_g9(report.worst_point.y())
              << ")\n";
    std::cout << (report.passed() ? "PASS" : "FAIL") << " descent: " << report.n_violations
              << " points above tolerance " << format_g9(args.tol) << '\n';
    return report.passed() ? 0 : 1;
}

struct CurlArgs {
    FieldArgs field;
    double tol = 1e-4;
    double fd_step = 1e-3;
    std::string csv_path;
};

int do_check_curl(const CurlArgs& args) {
    const CurlGrid grid = planar_curl(make_field(args.field), make_domain(args.field),
                                      args.field.n, args.fd_step);
    if (!args.csv_path.empty()) {
        std::ofstream out(args.csv_path);
        if (!out) {
            std::cerr << "error: cannot open '" << args.csv_path << "' for writing\n";
            return 2;
        }
        write_curl_csv(out, grid);
        std::cout << "wrote: " << args.csv_path << '\n';
    }

    bool ok = true;
    if (args.field.field == "rotation" || args.field.field == "irreducible") {
        const double expected = 2.0 * args.field.omega;
        double deviation = 0.0;
        for (Eigen::Index i = 0; i < grid.curl.rows(); ++i) {
            for (Eigen::Index j = 0; j < grid.curl.cols(); ++j) {
                deviation = std::max(deviation, std::abs(grid.curl(i, j) - expected));
            }
        }
        std::cout << "expected uniform curl: " << format_g9(expected) << '\n';
        ok = report_line("largest deviation from expected curl", deviation, args.tol);
    } else {
        ok = report_line("largest absolute curl", grid.max_abs(), args.tol);
    }
    return ok ? 0 : 1;
}

void add_field_options(CLI::App* cmd, FieldArgs& args) {
    cmd->add_option("--field", args.field,
                    "gradient, rotation, reducible or irreducible")
        ->capture_default_str();
    cmd->add_option("--potential", args.potential, "quadratic, ring or auto")
        ->capture_default_str();
    cmd->add_option("--domain", args.domain, "x1_min x1_max x2_min x2_max")->expected(4);
    cmd->add_option("--n", args.n, "grid points per axis")->capture_default_str();
    cmd->add_option("--eta", args.eta, "gradient rate")->capture_default_str();
    cmd->add_option("--omega", args.omega, "rotation rate")->capture_default_str();
    cmd->add_option("--k", args.k, "radial stiffness")->capture_default_str();
    cmd->add_option("--rho0", args.rho0, "preferred radius")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator and analysis toolkit for stress-gated structural drift "
                 "over an excitable fast layer"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "simulate one scenario and write its outputs");
    add_run_options(run_cmd, run_args);

    ScanArgs scan_args;
    CLI::App* scan_cmd =
        app.add_subcommand("scan", "stationary-drive amplitude scan over theta1");
    scan_cmd->add_option("--min", scan_args.scan.theta1_min, "lowest theta1")
        ->capture_default_str();
    scan_cmd->add_option("--max", scan_args.scan.theta1_max, "highest theta1")
        ->capture_default_str();
    scan_cmd->add_option("--points", scan_args.scan.n_points, "grid points")
        ->capture_default_str();
    scan_cmd->add_option("--dt", scan_args.scan.dt, "integration step")->capture_default_str();
    scan_cmd->add_option("--burn-in", scan_args.scan.burn_in, "settle time per point")
        ->capture_default_str();
    scan_cmd->add_option("--measure", scan_args.scan.measure, "measurement time per point")
        ->capture_default_str();
    scan_cmd->add_option("--amp-threshold", scan_args.scan.amp_threshold,
                         "peak-to-peak amplitude separating the labels")
        ->capture_default_str();
    scan_cmd->add_option("--a", scan_args.base.a, "recovery offset")->capture_default_str();
    scan_cmd->add_option("--b", scan_args.base.b, "recovery slope")->capture_default_str();
    scan_cmd->add_option("--epsilon", scan_args.base.epsilon, "timescale separation")
        ->capture_default_str();
    scan_cmd->add_option("--u0", scan_args.u0, "initial u")->capture_default_str();
    scan_cmd->add_option("--v0", scan_args.v0, "initial v")->capture_default_str();
    scan_cmd->add_option("--out", scan_args.out_path, "CSV path, - for stdout")
        ->capture_default_str();

    CLI::App* check_cmd = app.add_subcommand("check", "reducibility and integrator checks");
    check_cmd->require_subcommand(1);

    OjaArgs oja_args;
    CLI::App* oja_cmd =
        check_cmd->add_subcommand("oja", "principal-component flow convergence check");
    oja_cmd->add_option("--c", oja_args.c, "symmetric 2x2 matrix, row-major")->expected(4);
    oja_cmd->add_option("--w0", oja_args.w0, "initial weight vector")->expected(2);
    oja_cmd->add_option("--dt", oja_args.dt, "integration step")->capture_default_str();
    oja_cmd->add_option("--steps", oja_args.steps, "step count")->capture_default_str();
    oja_cmd->add_option("--tol-angle", oja_args.tol_angle, "eigenvector angle tolerance")
        ->capture_default_str();
    oja_cmd->add_option("--tol-norm", oja_args.tol_norm, "weight norm tolerance")
        ->capture_default_str();
    oja_cmd->add_option("--tol-mono", oja_args.tol_mono, "value increase tolerance")
        ->capture_default_str();

    MinimaxArgs minimax_args;
    CLI::App* minimax_cmd =
        check_cmd->add_subcommand("minimax", "rotation flow conservation check");
    minimax_cmd->add_option("--x0", minimax_args.x0, "initial x")->capture_default_str();
    minimax_cmd->add_option("--y0", minimax_args.y0, "initial y")->capture_default_str();
    minimax_cmd->add_option("--dt", minimax_args.dt, "integration step")->capture_default_str();
    minimax_cmd->add_option("--t", minimax_args.t, "total time")->capture_default_str();
    minimax_cmd->add_option("--tol", minimax_args.tol, "radius drift tolerance")
        ->capture_default_str();

    DescentArgs descent_args;
    CLI::App* descent_cmd =
        check_cmd->add_subcommand("descent", "grid check of grad V . F <= tolerance");
    add_field_options(descent_cmd, descent_args.field);
    descent_cmd->add_option("--tol", descent_args.tol, "inner product tolerance")
        ->capture_default_str();
    descent_cmd->add_option("--fd-step", descent_args.fd_step, "finite difference step")
        ->capture_default_str();

    CurlArgs curl_args;
    CLI::App* curl_cmd = check_cmd->add_subcommand("curl", "grid check of the planar curl");
    add_field_options(curl_cmd, curl_args.field);
    curl_cmd->add_option("--tol", curl_args.tol, "curl tolerance")->capture_default_str();
    curl_cmd->add_option("--fd-step", curl_args.fd_step, "finite difference step")
        ->capture_default_str();
    curl_cmd->add_option("--csv", curl_args.csv_path, "also write the curl grid CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (run_cmd->parsed()) return do_run(run_args);
        if (scan_cmd->parsed()) return do_scan(scan_args);
        if (oja_cmd->parsed()) return do_check_oja(oja_args);
        if (minimax_cmd->parsed()) return do_check_minimax(minimax_args);
        if (descent_cmd->parsed()) return do_check_descent(descent_args);
        if (curl_cmd->parsed()) return do_check_curl(curl_args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
