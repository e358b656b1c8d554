#pragma once

// Independent oracles the tests check the implementation against. Everything
// here deliberately avoids the closed-form evaluation paths of the library:
// paths are re-derived by integrating the vehicle dynamics, lengths by
// quadrature of sampled geometry, minima by dense sampling or exhaustive
// enumeration.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dubfleet/assignment.hpp"
#include "dubfleet/dubins.hpp"
#include "dubfleet/separation.hpp"

namespace oracle {

using dubfleet::Complex;
using dubfleet::FleetPath;
using dubfleet::PathPrimitive;
using dubfleet::Pose;

// Forward-integrate the constant-speed unicycle dynamics with the
// piecewise-constant turn rate implied by the primitives (RK4 per leg).
inline Pose integrate_dynamics(const FleetPath& path, double dt = 0.01) {
    double x = path.start.x, y = path.start.y, theta = path.start.theta;
    const double v = path.speed;
    for (const PathPrimitive& prim : path.primitives) {
        const double u = prim.kind == PathPrimitive::Kind::Arc ? prim.angular_rate : 0.0;
        double remaining = prim.duration;
        while (remaining > 1e-15) {
            const double h = std::min(dt, remaining);
            const auto fx = [&](double th) { return v * std::cos(th); };
            const auto fy = [&](double th) { return v * std::sin(th); };
            const double k1x = fx(theta), k1y = fy(theta);
            const double k2x = fx(theta + 0.5 * h * u), k2y = fy(theta + 0.5 * h * u);
            const double k3x = k2x, k3y = k2y;  // theta' is exact, k2 == k3
            const double k4x = fx(theta + h * u), k4y = fy(theta + h * u);
            x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            theta += h * u;
            remaining -= h;
        }
    }
    return {x, y, theta};
}

// Arc length by Richardson-extrapolated chord sums, sampled per leg so every
// chord lies on one smooth primitive; any positional jump between successive
// legs is added as traversed length, so broken chaining inflates the result.
inline double quadrature_length(const FleetPath& path, int samples_per_leg = 1024) {
    if (path.duration() <= 0.0) return 0.0;
    const auto leg_chords = [&](const PathPrimitive& prim, int n) {
        double sum = 0.0;
        Complex prev = prim.position_at(0.0);
        for (int i = 1; i <= n; ++i) {
            const Complex p = prim.position_at(prim.duration * i / n);
            sum += std::abs(p - prev);
            prev = p;
        }
        return sum;
    };
    double total = 0.0;
    const PathPrimitive* previous = nullptr;
    for (const PathPrimitive& prim : path.primitives) {
        if (previous) {
            total += std::abs(prim.position_at(0.0) -
                              previous->position_at(previous->duration));
        }
        if (prim.duration > 0.0) {
            const double coarse = leg_chords(prim, samples_per_leg);
            const double fine = leg_chords(prim, 2 * samples_per_leg);
            total += fine + (fine - coarse) / 3.0;
        }
        previous = &prim;
    }
    if (!path.primitives.empty()) {
        total += std::abs(path.primitives.front().position_at(0.0) - path.start.position());
        total += std::abs(path.primitives.back().position_at(path.primitives.back().duration) -
                          path.end.position());
    }
    return total;
}

// Minimum pairwise distance by dense time sampling at step dt over the
// common span of the two paths.
inline double dense_min_distance(const FleetPath& a, const FleetPath& b, double dt = 1e-4) {
    const double tau = std::min(a.duration(), b.duration());
    const auto legs_a = dubfleet::timed_legs(a);
    const auto legs_b = dubfleet::timed_legs(b);
    double best = std::abs(a.start.position() - b.start.position());
    std::size_t ia = 0, ib = 0;
    const long steps = static_cast<long>(tau / dt);
    for (long i = 0; i <= steps; ++i) {
        const double t = std::min(i * dt, tau);
        while (ia + 1 < legs_a.size() && t > legs_a[ia].t_end) ++ia;
        while (ib + 1 < legs_b.size() && t > legs_b[ib].t_end) ++ib;
        if (legs_a.empty() || legs_b.empty()) break;
        best = std::min(best, std::abs(legs_a[ia].position_at(t) - legs_b[ib].position_at(t)));
    }
    return best;
}

// Exhaustive feasibility check over every candidate combination.
inline bool brute_force_feasible(const dubfleet::ConflictMatrix& matrix) {
    const auto& sizes = matrix.sizes();
    const int n = matrix.aircraft_count();
    std::vector<int> pick(n, 0);
    while (true) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) {
            for (int b = a + 1; b < n && ok; ++b) {
                if (matrix.conflict(a, b, pick[a], pick[b])) ok = false;
            }
        }
        if (ok) return true;
        int k = n - 1;
        while (k >= 0 && ++pick[k] == sizes[k]) pick[k--] = 0;
        if (k < 0) return false;
    }
}

// Independent LSR length by numeric tangent construction: scan the
// departure heading for the configuration where the chord between the two
// tangency points actually runs along that heading, refining the root by
// bisection. No closed-form tangent formulas involved.
inline double lsr_tangent_length(const Pose& s, const Pose& e, double rho) {
    const Complex c1 = s.position() + Complex{0.0, rho} * s.direction();
    const Complex c2 = e.position() - Complex{0.0, rho} * e.direction();
    const auto wrap = [](double a) {
        a = std::fmod(a, dubfleet::kTwoPi);
        return a < 0.0 ? a + dubfleet::kTwoPi : a;
    };
    const auto residual = [&](double psi) {
        const Complex t1 = c1 + std::polar(rho, psi - dubfleet::kPi / 2.0);
        const Complex t2 = c2 + std::polar(rho, psi + dubfleet::kPi / 2.0);
        if (std::abs(t2 - t1) < 1e-12) return 0.0;
        return dubfleet::normalize_angle(std::arg(t2 - t1) - psi);
    };
    constexpr int kScan = 4096;
    double best = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < kScan; ++i) {
        double lo = dubfleet::kTwoPi * i / kScan;
        double hi = dubfleet::kTwoPi * (i + 1) / kScan;
        double flo = residual(lo), fhi = residual(hi);
        if (flo * fhi > 0.0 || std::abs(flo - fhi) > dubfleet::kPi) continue;  // skip wraps
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = residual(mid);
            if (flo * fm <= 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        const double psi = 0.5 * (lo + hi);
        const Complex t1 = c1 + std::polar(rho, psi - dubfleet::kPi / 2.0);
        const Complex t2 = c2 + std::polar(rho, psi + dubfleet::kPi / 2.0);
        // Left turn sweeps heading up to psi, right turn sweeps it back down
        // to the end heading.
        const double len =
            rho * wrap(psi - s.theta) + std::abs(t2 - t1) + rho * wrap(psi - e.theta);
        if (std::isnan(best) || len < best) best = len;
    }
    return best;
}

}  // namespace oracle
