#pragma once

#include <string>

#include <json.hpp>

#include "spinrelax/dynamics.hpp"
#include "spinrelax/sweep.hpp"
#include "spinrelax/verify.hpp"

namespace spinrelax {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All numeric output is rendered at 12 significant digits, which keeps
// reruns byte-identical and preserves tolerance-level comparisons.
std::string format_sig12(double x);
double round_sig12(double x);

void write_text_file(const std::string& path, const std::string& content);

// CSV surfaces. Empty fields mark absent quantities.
std::string sweep_csv(const std::vector<SweepRecord>& records);
std::string trajectory_csv(const Trajectory& traj);

// JSON round-trips: every emitted report parses back into its type.
nlohmann::json to_json(const SpectrumReport& rep);
SpectrumReport spectrum_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepRecord& rec);
nlohmann::json to_json(const std::vector<SweepRecord>& records);

nlohmann::json to_json(const BifurcationReport& rep);
BifurcationReport bifurcation_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EquivalenceResult& r);
nlohmann::json to_json(const GridResult& r);
nlohmann::json to_json(const DynamicsResult& r);

bool operator==(const SpectrumReport& a, const SpectrumReport& b);
bool operator==(const BifurcationReport& a, const BifurcationReport& b);

} // namespace spinrelax
