#pragma once

#include <algorithm>
#include <cmath>

#include "dubfleet/geometry.hpp"

namespace dubfleet {

/// Minimal closed-interval arithmetic for the temporal-separation bounds.
struct Interval {
    double lo{0.0};
    double hi{0.0};

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {}

    [[nodiscard]] double width() const { return hi - lo; }
    [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
};

inline Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(Interval a, Interval b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator+(Interval a, double s) { return {a.lo + s, a.hi + s}; }
inline Interval operator-(Interval a, double s) { return {a.lo - s, a.hi - s}; }

inline Interval operator*(Interval a, double s) {
    return s >= 0.0 ? Interval{a.lo * s, a.hi * s} : Interval{a.hi * s, a.lo * s};
}

inline Interval sqr(Interval a) {
    if (a.lo >= 0.0) return {a.lo * a.lo, a.hi * a.hi};
    if (a.hi <= 0.0) return {a.hi * a.hi, a.lo * a.lo};
    return {0.0, std::max(a.lo * a.lo, a.hi * a.hi)};
}

/// cos over an interval: endpoint values plus any interior extremum at a
/// multiple of pi.
inline Interval cos(Interval a) {
    if (a.width() >= kTwoPi) return {-1.0, 1.0};
    double lo = std::min(std::cos(a.lo), std::cos(a.hi));
    double hi = std::max(std::cos(a.lo), std::cos(a.hi));
    const double k_lo = std::ceil(a.lo / kPi);
    const double k_hi = std::floor(a.hi / kPi);
    for (double k = k_lo; k <= k_hi; k += 1.0) {
        const bool even = std::fmod(k, 2.0) == 0.0;
        if (even) hi = 1.0; else lo = -1.0;
    }
    return {lo, hi};
}

inline Interval sin(Interval a) { return cos(a - kPi / 2.0); }

}  // namespace dubfleet
