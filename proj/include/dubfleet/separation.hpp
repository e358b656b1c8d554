#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "dubfleet/dubins.hpp"

namespace dubfleet {

struct MismatchedDuration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One primitive pinned to an absolute mission-time window.
struct TimedLeg {
    PathPrimitive primitive;
    double t_start{0.0};
    double t_end{0.0};

    [[nodiscard]] Complex position_at(double t) const {
        return primitive.position_at(t - t_start);
    }
};

/// Absolute tolerance of the certified temporal minimum.
inline constexpr double kSeparationTolerance = 1e-4;

/// Durations within this slack count as equal; length-fitted paths agree on
/// their flight time only to the fit tolerance, not to round-off.
inline constexpr double kDurationSlack = 1e-6;

struct Aabb {
    double xmin{0.0}, xmax{0.0}, ymin{0.0}, ymax{0.0};
};

double box_distance(const Aabb& a, const Aabb& b);
Aabb primitive_box(const PathPrimitive& prim);

/// Exact minimum Euclidean distance between the geometric loci of two
/// primitives (segment-segment, segment-arc, arc-arc closed forms). Arc
/// spans wider than a full turn are treated as full circles.
double spatial_separation(const PathPrimitive& a, const PathPrimitive& b);

/// Global minimum over t in [t_lo, t_hi] of the distance between the two
/// timed legs. Line-line pairs are exact; pairs involving arcs are solved by
/// interval branch-and-bound. Returns m with the true minimum certified to
/// lie in [m - kSeparationTolerance, m].
double temporal_separation(const TimedLeg& a, const TimedLeg& b, double t_lo, double t_hi);

/// Work counters surfaced as planner telemetry.
struct SepCounters {
    long long pair_checks{0};
    long long temporal_solves{0};

    SepCounters& operator+=(const SepCounters& o) {
        pair_checks += o.pair_checks;
        temporal_solves += o.temporal_solves;
        return *this;
    }
};

/// Per-path cache of timed legs and bounding boxes, built once per candidate
/// and shared across every pair check that touches it.
struct PathGeometry {
    std::vector<TimedLeg> legs;
    std::vector<Aabb> leg_boxes;
    Aabb path_box{};
    Complex start_point{};
    double duration{0.0};
};

std::vector<TimedLeg> timed_legs(const FleetPath& path);
PathGeometry make_path_geometry(const FleetPath& path);

/// Separation decision over the overlap of the two time spans: true iff the
/// two trajectories keep a distance strictly above delta at every common
/// instant. Spatial pre-filtering clears leg pairs whose shapes already
/// stand clear of delta; the rest go to the temporal solver, whose
/// uncertainty band errs toward declaring conflict.
bool geometries_separated(const PathGeometry& a, const PathGeometry& b, double delta,
                          SepCounters& counters);

/// Same decision for two equal-duration paths given as timed legs. Throws
/// MismatchedDuration when total durations differ by more than the slack.
bool is_pair_separated(std::span<const TimedLeg> pa, std::span<const TimedLeg> pb, double delta);
bool is_pair_separated(const FleetPath& a, const FleetPath& b, double delta);

/// Pairwise separation over a whole fleet sharing one duration.
bool are_separated(double delta, const std::vector<FleetPath>& paths);

}  // namespace dubfleet
