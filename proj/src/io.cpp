#include "regimeflow/io.hpp"

#include "regimeflow/svg.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace regimeflow {
namespace {

void require_stream(const std::ofstream& out, const std::string& path) {
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
}

}  // namespace

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_run_csv(std::ostream& os, const RunResult& result) {
    os << "t,u,v,theta1,theta2,rho,phi,R,m_freeze,m_cycle,m_mono,B,S,gate,regime\n";
    for (const SampleRow& r : result.samples) {
        os << format_g9(r.t) << ',' << format_g9(r.u) << ',' << format_g9(r.v) << ','
           << format_g9(r.theta1) << ',' << format_g9(r.theta2) << ',' << format_g9(r.rho) << ','
           << format_g9(r.phi) << ',' << format_g9(r.r) << ',' << format_g9(r.m_freeze) << ','
           << format_g9(r.m_cycle) << ',' << format_g9(r.m_mono) << ',' << format_g9(r.b) << ','
           << format_g9(r.s) << ',' << format_g9(r.gate_value) << ',' << regime_char(r.label)
           << '\n';
    }
}

std::string run_csv_string(const RunResult& result) {
    std::ostringstream os;
    write_run_csv(os, result);
    return os.str();
}

void write_events_jsonl(std::ostream& os, const std::vector<SwitchEvent>& events) {
    for (const SwitchEvent& e : events) {
        nlohmann::ordered_json j;
        j["t_minus"] = e.t_minus;
        j["t_plus"] = e.t_plus;
        j["from"] = std::string(1, regime_char(e.from));
        j["to"] = std::string(1, regime_char(e.to));
        os << j.dump() << '\n';
    }
}

nlohmann::ordered_json summary_to_json(const RunSummary& summary) {
    nlohmann::ordered_json j;
    j["n_switches"] = summary.n_switches;
    j["n_switches_final_third"] = summary.n_switches_final_third;
    j["mean_B_post_burnin"] = summary.mean_badness_post_burnin;
    j["final_theta_speed"] = summary.final_theta_speed;
    if (summary.inter_switch_cv) {
        j["inter_switch_cv"] = *summary.inter_switch_cv;
    } else {
        j["inter_switch_cv"] = nullptr;
    }
    return j;
}

void write_scan_csv(std::ostream& os, const ScanResult& scan) {
    os << "theta1,label,amplitude\n";
    for (const ScanPoint& p : scan.points) {
        os << format_g9(p.theta1) << ',' << regime_char(p.label) << ',' << format_g9(p.amplitude)
           << '\n';
    }
}

void write_curl_csv(std::ostream& os, const CurlGrid& grid) {
    os << "x1,x2,curl\n";
    for (std::size_t i = 0; i < grid.x1.size(); ++i) {
        for (std::size_t j = 0; j < grid.x2.size(); ++j) {
            os << format_g9(grid.x1[i]) << ',' << format_g9(grid.x2[j]) << ','
               << format_g9(grid.curl(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
               << '\n';
        }
    }
}

std::vector<std::string> write_run_outputs(const std::string& dir, const RunResult& result,
                                           bool plots) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;

    const auto file = [&dir](const std::string& name) {
        return (std::filesystem::path(dir) / name).string();
    };

    {
        const std::string path = file("run.csv");
        std::ofstream out(path);
        require_stream(out, path);
        write_run_csv(out, result);
        written.push_back(path);
    }
    {
        const std::string path = file("events.jsonl");
        std::ofstream out(path);
        require_stream(out, path);
        write_events_jsonl(out, result.events);
        written.push_back(path);
    }
    {
        const std::string path = file("summary.json");
        std::ofstream out(path);
        require_stream(out, path);
        out << summary_to_json(result.summary).dump(2) << '\n';
        written.push_back(path);
    }
    {
        const std::string path = file("effective_config.json");
        std::ofstream out(path);
        require_stream(out, path);
        out << config_to_json(result.config).dump(2) << '\n';
        written.push_back(path);
    }
    if (plots) {
        for (std::string& panel : write_run_panels(dir, result)) {
            written.push_back(std::move(panel));
        }
    }
    return written;
}

}  // namespace regimeflow
