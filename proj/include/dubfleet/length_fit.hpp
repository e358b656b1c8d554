#pragma once

#include <optional>
#include <vector>

#include "dubfleet/dubins.hpp"

namespace dubfleet {

/// Length a path must reach, with the acceptance band for the scalar fits.
struct FitTarget {
    double target_length{0.0};
    double length_tolerance{0.0};

    static FitTarget for_length(double length) {
        return {length, std::max(1e-6, 1e-9 * length)};
    }
};

/// Fit the word's length to the target by enlarging the turn radius above
/// the minimal one. Absent when no radius in the search range meets the
/// tolerance or the target is below the word's length at the minimal radius.
std::optional<FleetPath> fit_radius(const PathWord& word, const Pose& start, const Pose& end,
                                    const FitTarget& target, const VehicleParams& params);

/// Fit the word's length by prepending/appending straight extensions of
/// total length l >= 0, split by `ratio` (1 = all at the start, 0 = all at
/// the end, 1/2 = both). The inner word is built at the minimal radius
/// between the shifted endpoints.
std::optional<FleetPath> fit_extension(const PathWord& word, double ratio, const Pose& start,
                                       const Pose& end, const FitTarget& target,
                                       const VehicleParams& params);

/// Number of independent fit problems behind fit_dubins: 8 radius fits plus
/// 8 words x 3 extension ratios.
inline constexpr int kFitTaskCount = 32;

/// Run fit task `index` in the fixed word-major, ratio-minor order. Used by
/// the planner to fan the 32 fits out to a worker pool.
std::optional<FleetPath> run_fit_task(int index, const Pose& start, const Pose& end,
                                      const VehicleParams& params, double tau);

/// All paths from the 32-member family whose travel time equals tau, one
/// best fit per (word, ratio), deduplicated on sampled geometry. May be
/// empty when tau is below the shortest feasible time.
std::vector<FleetPath> fit_dubins(const Pose& start, const Pose& end, const VehicleParams& params,
                                  double tau);

/// Drop later entries whose sampled geometry coincides with an earlier one
/// within 1e-6 m at 16 equispaced times.
std::vector<FleetPath> dedup_paths(std::vector<FleetPath> paths);

}  // namespace dubfleet
