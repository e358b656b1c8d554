#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dubfleet/planner.hpp"

namespace dubfleet {

/// Schema version written to and required from every file.
inline constexpr int kFileFormatVersion = 1;

struct ScenarioFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioFile {
    Scenario scenario;
    PlannerConfig config;
};

/// Strict parse of a scenario document: required keys `format`, `vehicles`,
/// `wind`, `aircraft`, `planner`; optional `rng` (informational); unknown
/// keys rejected. Angles are radians, distances meters, times seconds.
ScenarioFile parse_scenario_json(const nlohmann::json& doc);
ScenarioFile load_scenario_file(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& scenario, const PlannerConfig& config);
void save_scenario_file(const std::string& path, const Scenario& scenario,
                        const PlannerConfig& config);

nlohmann::json result_to_json(const PlanResult& result);
void save_result_file(const std::string& path, const PlanResult& result);

/// Result document reduced to what replay needs: status, tau, and the timed
/// primitives per aircraft.
struct LoadedResult {
    PlanStatus status{PlanStatus::NoSolution};
    double tau{0.0};
    std::vector<std::vector<TimedLeg>> aircraft_legs;
};

LoadedResult parse_result_json(const nlohmann::json& doc);
LoadedResult load_result_file(const std::string& path);

/// Replay a reloaded primitive list at mission time t.
Complex replay_position(const std::vector<TimedLeg>& legs, double t);

}  // namespace dubfleet
