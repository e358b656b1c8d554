#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace dubfleet {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to (-pi, pi].
inline double normalize_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    if (a > kPi) a -= kTwoPi;
    return a;
}

/// Reduce an angle to [0, 2*pi). Values within 1e-12 of a full turn snap to
/// zero so that collinear constructions do not produce spurious full circles.
inline double mod_2pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (kTwoPi - a < 1e-12) a = 0.0;
    if (a < 1e-12) a = 0.0;
    return a;
}

/// Planar state (x, y, theta) with theta in (-pi, pi].
struct Pose {
    double x{0.0};
    double y{0.0};
    double theta{0.0};

    Pose() = default;
    Pose(double x_, double y_, double theta_) : x(x_), y(y_), theta(normalize_angle(theta_)) {}

    [[nodiscard]] Complex position() const { return {x, y}; }
    [[nodiscard]] Complex direction() const { return std::polar(1.0, theta); }
};

inline bool nearly_same_pose(const Pose& a, const Pose& b, double tol = 1e-9) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
           std::abs(normalize_angle(a.theta - b.theta)) <= tol;
}

/// Shared flight characteristics of the fleet: cruise air speed, minimal turn
/// radius and minimal pairwise separation. The turn-rate bound V/rho_min is
/// implied and never stored.
struct VehicleParams {
    double speed{15.0};
    double min_turn_radius{40.0};
    double separation{80.0};

    [[nodiscard]] bool valid() const {
        return speed > 0.0 && min_turn_radius > 0.0 && separation > 0.0;
    }
};

}  // namespace dubfleet
