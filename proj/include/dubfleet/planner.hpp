#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dubfleet/assignment.hpp"
#include "dubfleet/dubins.hpp"
#include "dubfleet/separation.hpp"

namespace dubfleet {

struct InvalidScenario : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Search parameters of the flight-time sweep: upper-bound ratio R, points
/// inserted per gap b, minimum gap width w, plus the stop conditions.
struct PlannerConfig {
    double time_ratio{3.0};
    int resample_count{2};
    double min_width{0.1};
    int max_iterations{300};
    double timeout{60.0};
    /// Worker threads for the parallel kernels; 0 = all available, always
    /// capped by the DUBINS_FLEET_THREADS environment variable.
    int threads{0};

    [[nodiscard]] bool valid() const {
        return time_ratio > 1.0 && resample_count >= 1 && min_width > 0.0 &&
               max_iterations >= 1 && timeout > 0.0;
    }
};

/// A fleet planning problem: one start and end pose per aircraft, shared
/// vehicle parameters, uniform wind, and per-aircraft arrival offsets
/// (seconds after the previous aircraft; first entry 0).
struct Scenario {
    std::vector<Pose> starts;
    std::vector<Pose> ends;
    VehicleParams params;
    Complex wind{0.0, 0.0};
    std::vector<double> arrival_offsets;

    [[nodiscard]] int size() const { return static_cast<int>(starts.size()); }

    /// Cumulative arrival offset of aircraft k: its flight time is the fleet
    /// time tau plus this value.
    [[nodiscard]] double cumulative_offset(int k) const;

    /// Throws InvalidScenario on mismatched list lengths, |wind| >= V or
    /// negative offsets.
    void validate() const;
};

/// Ascending set of candidate flight times with tested marks; entries keep
/// pairwise gaps above the dedup tolerance (1e-9 s).
class TimeQueue {
public:
    struct Entry {
        double tau;
        bool tested;
    };

    bool insert(double tau, bool tested = false);
    void prune_at_or_above(double tau_best);

    [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
    std::vector<Entry>& entries() { return entries_; }

private:
    std::vector<Entry> entries_;
};

enum class PlanStatus { Solved, NoSolution, Timeout, IterationLimit, NoProgress };

std::string to_string(PlanStatus status);

struct PlanResult {
    PlanStatus status{PlanStatus::NoSolution};
    double tau{0.0};
    std::vector<FleetPath> paths;
    int iterations_used{0};
    double wall_time{0.0};
    SepCounters stats;
};

/// Resolve the effective worker count: `requested` (0 = hardware), capped by
/// the DUBINS_FLEET_THREADS environment variable when set.
int resolve_worker_count(int requested);

/// (tau_min, tau_max): tau_min is the largest over aircraft of its shortest
/// individual flight time minus its cumulative arrival offset (floored at
/// zero); tau_max = R * tau_min. Endpoints are not wind-shifted here.
std::pair<double, double> initial_bounds(const Scenario& scenario, double time_ratio);

/// Endpoint translated upwind by the aircraft's own flight time; heading
/// unchanged.
Pose wind_shifted_end(const Pose& end, Complex wind, double tau_k);

/// Candidate sets L_k for fleet time tau: each aircraft is fitted to its
/// offset-adjusted flight time against its wind-shifted endpoint. The fits
/// fan out to the worker pool; output is identical for any worker count.
std::vector<std::vector<FleetPath>> build_candidates(const Scenario& scenario, double tau,
                                                     int threads);
std::vector<std::vector<FleetPath>> build_candidates_serial(const Scenario& scenario, double tau);

/// Conflict tensor over all candidate pairs. Pair blocks are independent
/// tasks; output is identical for any worker count.
ConflictMatrix build_conflict_matrix(const std::vector<std::vector<FleetPath>>& candidates,
                                     double delta, int threads, SepCounters& counters);
ConflictMatrix build_conflict_matrix_serial(const std::vector<std::vector<FleetPath>>& candidates,
                                            double delta, SepCounters& counters);

/// Insert `b` regularly spaced values into every gap wider than `w`;
/// returns the number of entries actually added.
int resample(TimeQueue& queue, int b, double w);

/// Algorithm: sweep untested flight times in ascending order; fit candidate
/// sets, build the conflict tensor, and search for a conflict-free
/// assignment; on success prune the queue above the solution and refine
/// until a stop condition fires.
PlanResult plan_fleet(const Scenario& scenario, const PlannerConfig& config);

}  // namespace dubfleet
