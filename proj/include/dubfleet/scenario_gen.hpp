#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dubfleet/planner.hpp"

namespace dubfleet {

struct UnsupportedCount : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RepulsionDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Seeded random source used by every generator. Draws come from the
/// standard-specified mt19937_64 stream with hand-rolled uniform mappings,
/// so identical seeds reproduce identical scenarios across platforms.
/// Substreams are derived with a splitmix64 hash of (seed, stream id).
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
    }
    double uniform_angle() { return normalize_angle(uniform(0.0, kTwoPi)); }

    static constexpr const char* algorithm() { return "mt19937_64"; }

private:
    std::mt19937_64 gen_;
};

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

enum class FormationKind { Line, Circle, Chevron, Grid };

std::string to_string(FormationKind kind);

struct FormationSpec {
    FormationKind kind{FormationKind::Line};
    int count{1};
    double spacing{120.0};
    Pose anchor{};
};

enum class RandomMode { Independent, Shifted, Disk };

struct RandomSpec {
    int count{1};
    double area{1000.0};
    double min_separation{240.0};
    RandomMode mode{RandomMode::Independent};
    double disk_distance{0.0};
    std::uint64_t seed{0};
};

/// Deterministic formation slots: all headings equal the anchor heading, all
/// pairwise distances at least `spacing`.
std::vector<Pose> make_formation(const FormationSpec& spec);

/// Repulsion-spaced random states: points seeded uniformly in the area
/// square, displaced away from too-close neighbours until the minimum
/// pairwise distance holds (points may leave the square), headings uniform.
/// Shifted and Disk modes derive positions from `base` (the start states).
std::vector<Pose> make_random_states(const RandomSpec& spec, std::span<const Pose> base = {});

enum class ScenarioFamily { Formation, RngToFormation, FullRng };

std::string to_string(ScenarioFamily family);

/// Assemble a benchmark scenario of the given family and fleet size. Zero
/// wind, zero arrival offsets, identity slot assignment.
Scenario make_scenario(ScenarioFamily family, int n, const VehicleParams& params,
                       std::uint64_t seed);

}  // namespace dubfleet
