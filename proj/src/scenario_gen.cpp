#include "dubfleet/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dubfleet {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
    // splitmix64 finalizer over the combined value.
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string to_string(FormationKind kind) {
    switch (kind) {
        case FormationKind::Line: return "line";
        case FormationKind::Circle: return "circle";
        case FormationKind::Chevron: return "chevron";
        case FormationKind::Grid: return "grid";
    }
    return "?";
}

std::string to_string(ScenarioFamily family) {
    switch (family) {
        case ScenarioFamily::Formation: return "formation";
        case ScenarioFamily::RngToFormation: return "rng_to_formation";
        case ScenarioFamily::FullRng: return "full_rng";
    }
    return "?";
}

namespace {

// Slot offsets in the formation frame (heading along +x), before rotation
// by the anchor heading.
std::vector<Complex> formation_offsets(const FormationSpec& spec) {
    const int n = spec.count;
    const double s = spec.spacing;
    std::vector<Complex> offsets;
    offsets.reserve(n);
    switch (spec.kind) {
        case FormationKind::Line:
            for (int i = 0; i < n; ++i) {
                offsets.emplace_back(0.0, (i - (n - 1) / 2.0) * s);
            }
            break;
        case FormationKind::Circle: {
            if (n == 1) {
                offsets.emplace_back(0.0, 0.0);
                break;
            }
            const double circumradius = s / (2.0 * std::sin(kPi / n));
            for (int i = 0; i < n; ++i) {
                offsets.push_back(std::polar(circumradius, kTwoPi * i / n));
            }
            break;
        }
        case FormationKind::Chevron: {
            if (n < 2) throw UnsupportedCount("chevron needs at least 2 aircraft");
            // Lead slot at the tip, wing pairs trailing at 45 degrees.
            const double leg = s / std::sqrt(2.0);
            offsets.emplace_back(0.0, 0.0);
            for (int i = 1; i < n; ++i) {
                const int row = (i + 1) / 2;
                const double side = i % 2 == 1 ? 1.0 : -1.0;
                offsets.emplace_back(-row * leg, side * row * leg);
            }
            break;
        }
        case FormationKind::Grid: {
            const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
            const int rows = (n + cols - 1) / cols;
            int placed = 0;
            for (int r = 0; r < rows && placed < n; ++r) {
                for (int c = 0; c < cols && placed < n; ++c, ++placed) {
                    offsets.emplace_back((r - (rows - 1) / 2.0) * s,
                                         (c - (cols - 1) / 2.0) * s);
                }
            }
            break;
        }
    }
    return offsets;
}

}  // namespace

std::vector<Pose> make_formation(const FormationSpec& spec) {
    if (spec.count < 1) throw UnsupportedCount("formation needs at least 1 aircraft");
    if (spec.spacing <= 0.0) throw UnsupportedCount("formation spacing must be positive");
    const Complex rot = std::polar(1.0, spec.anchor.theta);
    std::vector<Pose> poses;
    poses.reserve(spec.count);
    for (const Complex& offset : formation_offsets(spec)) {
        const Complex p = spec.anchor.position() + offset * rot;
        poses.emplace_back(p.real(), p.imag(), spec.anchor.theta);
    }
    return poses;
}

std::vector<Pose> make_random_states(const RandomSpec& spec, std::span<const Pose> base) {
    if (spec.count < 1) throw UnsupportedCount("need at least 1 aircraft");
    SeededRng rng(spec.seed);
    const int n = spec.count;

    std::vector<Complex> points(n);
    switch (spec.mode) {
        case RandomMode::Independent:
            for (int i = 0; i < n; ++i) {
                points[i] = {rng.uniform(0.0, spec.area), rng.uniform(0.0, spec.area)};
            }
            break;
        case RandomMode::Shifted: {
            if (static_cast<int>(base.size()) != n) {
                throw UnsupportedCount("shifted mode needs one base pose per aircraft");
            }
            const Complex shift{rng.uniform(-spec.area, spec.area),
                                rng.uniform(-spec.area, spec.area)};
            for (int i = 0; i < n; ++i) points[i] = base[i].position() + shift;
            break;
        }
        case RandomMode::Disk: {
            if (static_cast<int>(base.size()) != n) {
                throw UnsupportedCount("disk mode needs one base pose per aircraft");
            }
            for (int i = 0; i < n; ++i) {
                points[i] = base[i].position() + std::polar(spec.disk_distance,
                                                            rng.uniform_angle());
            }
            break;
        }
    }

    // Repulsion: every point in violation moves away from each too-close
    // neighbour by half the deficit, all displacements applied at once.
    constexpr int kMaxIterations = 10000;
    bool settled = false;
    for (int iter = 0; iter < kMaxIterations && !settled; ++iter) {
        settled = true;
        std::vector<Complex> displacement(n, Complex{0.0, 0.0});
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const Complex d = points[i] - points[j];
                const double dist = std::abs(d);
                if (dist >= spec.min_separation) continue;
                settled = false;
                const double deficit = spec.min_separation - dist;
                const Complex away =
                    dist > 1e-9 ? d / dist : std::polar(1.0, 2.399963229728653 * (i + j));
                // The 1 nm nudge keeps tiny deficits from rounding to a
                // sub-ulp displacement and stalling at the boundary.
                displacement[i] += away * (deficit / 2.0 + 1e-9);
                displacement[j] -= away * (deficit / 2.0 + 1e-9);
            }
        }
        for (int i = 0; i < n; ++i) points[i] += displacement[i];
    }
    if (!settled) {
        // Final check: the last displacement round may have resolved it.
        double min_dist = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                min_dist = std::min(min_dist, std::abs(points[i] - points[j]));
            }
        }
        if (min_dist < spec.min_separation) {
            throw RepulsionDiverged("repulsion failed to reach the required separation");
        }
    }

    std::vector<Pose> poses;
    poses.reserve(n);
    for (int i = 0; i < n; ++i) {
        poses.emplace_back(points[i].real(), points[i].imag(), rng.uniform_angle());
    }
    return poses;
}

namespace {

FormationKind pick_kind(SeededRng& rng, int n) {
    // Chevron is only defined from 2 aircraft up.
    const int choices = n >= 2 ? 4 : 3;
    const int pick = static_cast<int>(rng.next() % choices);
    static constexpr FormationKind kinds[4] = {FormationKind::Line, FormationKind::Circle,
                                               FormationKind::Grid, FormationKind::Chevron};
    return kinds[pick];
}

}  // namespace

Scenario make_scenario(ScenarioFamily family, int n, const VehicleParams& params,
                       std::uint64_t seed) {
    if (n < 1) throw UnsupportedCount("need at least 1 aircraft");
    constexpr double kFormationSpacing = 120.0;
    constexpr double kFormationDistance = 1000.0;
    constexpr double kArea = 1000.0;
    constexpr double kRandomSeparation = 240.0;

    Scenario scenario;
    scenario.params = params;
    scenario.arrival_offsets.assign(n, 0.0);

    SeededRng rng(split_seed(seed, 0xf0e1));
    switch (family) {
        case ScenarioFamily::Formation: {
            const FormationKind start_kind = pick_kind(rng, n);
            const bool turn = rng.next() % 2 == 0;
            FormationKind end_kind = start_kind;
            double end_theta = 0.0;
            if (turn) {
                // Same formation performing a turn.
                static constexpr double turns[3] = {kPi / 2.0, -kPi / 2.0, kPi};
                end_theta = turns[rng.next() % 3];
            } else {
                // Switch to a different formation, same orientation.
                do {
                    end_kind = pick_kind(rng, n);
                } while (end_kind == start_kind);
            }
            scenario.starts = make_formation(
                {start_kind, n, kFormationSpacing, Pose{0.0, 0.0, 0.0}});
            scenario.ends = make_formation(
                {end_kind, n, kFormationSpacing, Pose{kFormationDistance, 0.0, end_theta}});
            break;
        }
        case ScenarioFamily::RngToFormation: {
            scenario.starts = make_random_states(
                {n, kArea, kRandomSeparation, RandomMode::Independent, 0.0,
                 split_seed(seed, 1)});
            scenario.ends = make_formation(
                {pick_kind(rng, n), n, kFormationSpacing,
                 Pose{kArea / 2.0 + kFormationDistance, kArea / 2.0, 0.0}});
            break;
        }
        case ScenarioFamily::FullRng: {
            scenario.starts = make_random_states(
                {n, kArea, kRandomSeparation, RandomMode::Independent, 0.0,
                 split_seed(seed, 1)});
            scenario.ends = make_random_states(
                {n, kArea, kRandomSeparation, RandomMode::Independent, 0.0,
                 split_seed(seed, 2)});
            break;
        }
    }
    return scenario;
}

}  // namespace dubfleet
