#pragma once

#include "regimeflow/coupled.hpp"
#include "regimeflow/reducibility.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace regimeflow {

// Fixed numeric format shared by every CSV writer: printf "%.9g".
std::string format_g9(double v);

// Columns: t,u,v,theta1,theta2,rho,phi,R,m_freeze,m_cycle,m_mono,B,S,gate,regime
void write_run_csv(std::ostream& os, const RunResult& result);
std::string run_csv_string(const RunResult& result);

// One JSON object per line with keys t_minus, t_plus, from, to.
void write_events_jsonl(std::ostream& os, const std::vector<SwitchEvent>& events);

nlohmann::ordered_json summary_to_json(const RunSummary& summary);

// Columns: theta1,label,amplitude
void write_scan_csv(std::ostream& os, const ScanResult& scan);

// Columns: x1,x2,curl
void write_curl_csv(std::ostream& os, const CurlGrid& grid);

// Writes run.csv, events.jsonl, summary.json and effective_config.json into
// dir (created if missing), plus the SVG panels when plots is set. Returns
// the list of files written.
std::vector<std::string> write_run_outputs(const std::string& dir, const RunResult& result,
                                           bool plots);

}  // namespace regimeflow
