#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dubfleet/geometry.hpp"

namespace dubfleet {

/// The eight basic path families: six Dubins words plus the two single-turn
/// words SLS and SRS.
enum class WordTag : std::uint8_t { LSL, RSR, LSR, RSL, LRL, RLR, SLS, SRS };

enum class Extension : std::uint8_t { None, StartExtended, EndExtended, BothExtended };

inline constexpr int kBasicWordCount = 8;

struct PathWord {
    WordTag tag{WordTag::LSL};
    Extension extension{Extension::None};
};

std::string to_string(WordTag tag);
std::string to_string(const PathWord& word);
std::optional<WordTag> word_tag_from_string(const std::string& s);

/// One timed piece of a path, in the complex-plane form used throughout:
///   line: f(t) = anchor + velocity * t,          |velocity| = V
///   arc:  f(t) = center + radius * e^{i(angular_rate * t + phase)}
/// with t local to the primitive, 0 <= t <= duration. The sign of
/// angular_rate encodes the turn direction (positive = left).
struct PathPrimitive {
    enum class Kind : std::uint8_t { Line, Arc };

    Kind kind{Kind::Line};
    Complex anchor{};
    Complex velocity{};
    Complex center{};
    double radius{0.0};
    double angular_rate{0.0};
    double phase{0.0};
    double duration{0.0};

    [[nodiscard]] Complex position_at(double t) const {
        if (kind == Kind::Line) return anchor + velocity * t;
        return center + std::polar(radius, angular_rate * t + phase);
    }

    [[nodiscard]] double heading_at(double t) const {
        if (kind == Kind::Line) return std::arg(velocity);
        const double sign = angular_rate >= 0.0 ? 1.0 : -1.0;
        return normalize_angle(angular_rate * t + phase + sign * kPi / 2.0);
    }

    [[nodiscard]] Pose pose_at(double t) const {
        const Complex p = position_at(t);
        return {p.real(), p.imag(), heading_at(t)};
    }
};

/// A concrete flyable path: ordered primitives chaining continuously from
/// `start` to `end`, flown at constant speed. Zero-length paths (start ==
/// end) carry no primitives.
struct FleetPath {
    PathWord word{};
    std::vector<PathPrimitive> primitives;
    double radius{0.0};
    double extension_length{0.0};
    double total_length{0.0};
    double speed{0.0};
    Pose start{};
    Pose end{};

    [[nodiscard]] double duration() const { return speed > 0.0 ? total_length / speed : 0.0; }

    /// Pose at mission time t in [0, duration()]. Throws std::out_of_range
    /// outside the domain (1e-9 s slack for round-off).
    [[nodiscard]] Pose eval(double t) const;
};

/// Build the unique path of the given basic word joining start to end at the
/// given turn radius. Absent when the construction does not exist for this
/// geometry (LSR/RSL tangent too short, LRL/RLR circles too far apart,
/// SLS/SRS heading lines not meeting on the correct side).
std::optional<FleetPath> build_word(const PathWord& word, const Pose& start, const Pose& end,
                                    double radius, double speed);

struct ShortestResult {
    double tau{0.0};
    FleetPath path;
};

/// Minimum-length member over all eight basic words at the minimal turn
/// radius. Identical start and end poses yield a zero-length path.
ShortestResult shortest_dubins(const Pose& start, const Pose& end, const VehicleParams& params);

}  // namespace dubfleet
