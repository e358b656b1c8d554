#include "dubfleet/io.hpp"

#include <algorithm>
#include <fstream>

namespace dubfleet {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const char* where, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
    if (!obj.is_object()) {
        throw ScenarioFileError(std::string(where) + " must be a JSON object");
    }
    for (const char* key : required) {
        if (!obj.contains(key)) {
            throw ScenarioFileError(std::string(where) + " is missing key \"" + key + "\"");
        }
    }
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        const auto known = [&](std::initializer_list<const char*> list) {
            for (const char* k : list) {
                if (key == k) return true;
            }
            return false;
        };
        if (!known(required) && !known(optional)) {
            throw ScenarioFileError(std::string(where) + " has unknown key \"" + key + "\"");
        }
    }
}

double as_number(const json& v, const char* what) {
    if (!v.is_number()) throw ScenarioFileError(std::string(what) + " must be a number");
    return v.get<double>();
}

Pose parse_pose(const json& v, const char* what) {
    if (!v.is_array() || v.size() != 3) {
        throw ScenarioFileError(std::string(what) + " must be [x, y, theta]");
    }
    return {as_number(v[0], what), as_number(v[1], what), as_number(v[2], what)};
}

}  // namespace

ScenarioFile parse_scenario_json(const json& doc) {
    require_keys(doc, "scenario", {"format", "vehicles", "wind", "aircraft", "planner"}, {"rng"});
    if (!doc["format"].is_number_integer() || doc["format"].get<int>() != kFileFormatVersion) {
        throw ScenarioFileError("unsupported scenario format version");
    }

    ScenarioFile file;

    const json& veh = doc["vehicles"];
    require_keys(veh, "vehicles", {"speed", "min_turn_radius", "separation"});
    file.scenario.params.speed = as_number(veh["speed"], "vehicles.speed");
    file.scenario.params.min_turn_radius =
        as_number(veh["min_turn_radius"], "vehicles.min_turn_radius");
    file.scenario.params.separation = as_number(veh["separation"], "vehicles.separation");

    const json& wind = doc["wind"];
    if (!wind.is_array() || wind.size() != 2) {
        throw ScenarioFileError("wind must be [wx, wy]");
    }
    file.scenario.wind = {as_number(wind[0], "wind"), as_number(wind[1], "wind")};

    const json& aircraft = doc["aircraft"];
    if (!aircraft.is_array() || aircraft.empty()) {
        throw ScenarioFileError("aircraft must be a non-empty array");
    }
    for (const json& entry : aircraft) {
        require_keys(entry, "aircraft entry", {"start", "end"}, {"arrival_offset"});
        file.scenario.starts.push_back(parse_pose(entry["start"], "aircraft start"));
        file.scenario.ends.push_back(parse_pose(entry["end"], "aircraft end"));
        file.scenario.arrival_offsets.push_back(
            entry.contains("arrival_offset")
                ? as_number(entry["arrival_offset"], "arrival_offset")
                : 0.0);
    }

    const json& planner = doc["planner"];
    require_keys(planner, "planner", {"R", "b", "w", "max_iterations", "timeout"});
    file.config.time_ratio = as_number(planner["R"], "planner.R");
    file.config.resample_count = static_cast<int>(as_number(planner["b"], "planner.b"));
    file.config.min_width = as_number(planner["w"], "planner.w");
    file.config.max_iterations =
        static_cast<int>(as_number(planner["max_iterations"], "planner.max_iterations"));
    file.config.timeout = as_number(planner["timeout"], "planner.timeout");

    file.scenario.validate();
    if (!file.config.valid()) {
        throw ScenarioFileError("planner parameters violate their invariants");
    }
    return file;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioFileError("cannot open scenario file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ScenarioFileError("scenario file is not valid JSON: " + std::string(e.what()));
    }
    return parse_scenario_json(doc);
}

nlohmann::json scenario_to_json(const Scenario& scenario, const PlannerConfig& config) {
    json doc;
    doc["format"] = kFileFormatVersion;
    doc["vehicles"] = {{"speed", scenario.params.speed},
                       {"min_turn_radius", scenario.params.min_turn_radius},
                       {"separation", scenario.params.separation}};
    doc["wind"] = {scenario.wind.real(), scenario.wind.imag()};
    json aircraft = json::array();
    for (int k = 0; k < scenario.size(); ++k) {
        aircraft.push_back({{"start", {scenario.starts[k].x, scenario.starts[k].y,
                                       scenario.starts[k].theta}},
                            {"end", {scenario.ends[k].x, scenario.ends[k].y,
                                     scenario.ends[k].theta}},
                            {"arrival_offset", scenario.arrival_offsets[k]}});
    }
    doc["aircraft"] = std::move(aircraft);
    doc["planner"] = {{"R", config.time_ratio},
                      {"b", config.resample_count},
                      {"w", config.min_width},
                      {"max_iterations", config.max_iterations},
                      {"timeout", config.timeout}};
    doc["rng"] = "mt19937_64";
    return doc;
}

void save_scenario_file(const std::string& path, const Scenario& scenario,
                        const PlannerConfig& config) {
    std::ofstream out(path);
    if (!out) throw ScenarioFileError("cannot write scenario file: " + path);
    out << scenario_to_json(scenario, config).dump(2) << '\n';
}

nlohmann::json result_to_json(const PlanResult& result) {
    json doc;
    doc["format"] = kFileFormatVersion;
    doc["status"] = to_string(result.status);
    doc["tau"] = result.tau;
    json aircraft = json::array();
    for (const FleetPath& path : result.paths) {
        json primitives = json::array();
        double t = 0.0;
        for (const PathPrimitive& prim : path.primitives) {
            json p;
            if (prim.kind == PathPrimitive::Kind::Line) {
                p["type"] = "line";
                p["anchor"] = {prim.anchor.real(), prim.anchor.imag()};
                p["velocity"] = {prim.velocity.real(), prim.velocity.imag()};
            } else {
                p["type"] = "arc";
                p["center"] = {prim.center.real(), prim.center.imag()};
                p["radius"] = prim.radius;
                p["angular_rate"] = prim.angular_rate;
                p["phase"] = prim.phase;
            }
            p["t0"] = t;
            p["t1"] = t + prim.duration;
            t += prim.duration;
            primitives.push_back(std::move(p));
        }
        aircraft.push_back({{"word", to_string(path.word)},
                            {"radius", path.radius},
                            {"extension_length", path.extension_length},
                            {"primitives", std::move(primitives)}});
    }
    doc["aircraft"] = std::move(aircraft);
    doc["telemetry"] = {{"iterations", result.iterations_used},
                        {"wall_time_s", result.wall_time},
                        {"pair_checks", result.stats.pair_checks},
                        {"temporal_solves", result.stats.temporal_solves}};
    return doc;
}

void save_result_file(const std::string& path, const PlanResult& result) {
    std::ofstream out(path);
    if (!out) throw ScenarioFileError("cannot write result file: " + path);
    out << result_to_json(result).dump(2) << '\n';
}

LoadedResult parse_result_json(const json& doc) {
    require_keys(doc, "result", {"format", "status", "tau", "aircraft", "telemetry"});
    if (!doc["format"].is_number_integer() || doc["format"].get<int>() != kFileFormatVersion) {
        throw ScenarioFileError("unsupported result format version");
    }
    LoadedResult result;
    const std::string status = doc["status"].get<std::string>();
    bool known = false;
    for (PlanStatus s : {PlanStatus::Solved, PlanStatus::NoSolution, PlanStatus::Timeout,
                         PlanStatus::IterationLimit, PlanStatus::NoProgress}) {
        if (to_string(s) == status) {
            result.status = s;
            known = true;
        }
    }
    if (!known) throw ScenarioFileError("unknown result status: " + status);
    result.tau = as_number(doc["tau"], "tau");

    for (const json& entry : doc["aircraft"]) {
        require_keys(entry, "result aircraft", {"word", "radius", "extension_length",
                                                "primitives"});
        std::vector<TimedLeg> legs;
        for (const json& p : entry["primitives"]) {
            TimedLeg leg;
            const std::string type = p.at("type").get<std::string>();
            leg.t_start = as_number(p.at("t0"), "t0");
            leg.t_end = as_number(p.at("t1"), "t1");
            leg.primitive.duration = leg.t_end - leg.t_start;
            if (type == "line") {
                leg.primitive.kind = PathPrimitive::Kind::Line;
                leg.primitive.anchor = {as_number(p.at("anchor")[0], "anchor"),
                                        as_number(p.at("anchor")[1], "anchor")};
                leg.primitive.velocity = {as_number(p.at("velocity")[0], "velocity"),
                                          as_number(p.at("velocity")[1], "velocity")};
            } else if (type == "arc") {
                leg.primitive.kind = PathPrimitive::Kind::Arc;
                leg.primitive.center = {as_number(p.at("center")[0], "center"),
                                        as_number(p.at("center")[1], "center")};
                leg.primitive.radius = as_number(p.at("radius"), "radius");
                leg.primitive.angular_rate = as_number(p.at("angular_rate"), "angular_rate");
                leg.primitive.phase = as_number(p.at("phase"), "phase");
            } else {
                throw ScenarioFileError("unknown primitive type: " + type);
            }
            legs.push_back(std::move(leg));
        }
        result.aircraft_legs.push_back(std::move(legs));
    }
    return result;
}

LoadedResult load_result_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioFileError("cannot open result file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ScenarioFileError("result file is not valid JSON: " + std::string(e.what()));
    }
    return parse_result_json(doc);
}

Complex replay_position(const std::vector<TimedLeg>& legs, double t) {
    if (legs.empty()) return {};
    for (const TimedLeg& leg : legs) {
        if (t <= leg.t_end || &leg == &legs.back()) {
            const double tc = std::clamp(t, leg.t_start, leg.t_end);
            return leg.position_at(tc);
        }
    }
    return legs.back().position_at(legs.back().t_end);
}

}  // namespace dubfleet
