#include "dubfleet/dubins.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dubfleet {

namespace {

constexpr double kDegenerate = 1e-12;

// Word segments before assembly: 'L'/'R' carry an arc angle in [0, 2pi),
// 'S' a straight length in meters.
struct Segment {
    char type;
    double param;
};

Complex left_center(const Pose& p, double rho) {
    return p.position() + Complex{0.0, rho} * p.direction();
}

Complex right_center(const Pose& p, double rho) {
    return p.position() - Complex{0.0, rho} * p.direction();
}

struct WordPlan {
    std::array<Segment, 4> segs{};
    int count{0};
    void add(char type, double param) { segs[count++] = {type, param}; }
    [[nodiscard]] double length(double rho) const {
        double len = 0.0;
        for (int i = 0; i < count; ++i) {
            len += segs[i].type == 'S' ? segs[i].param : rho * segs[i].param;
        }
        return len;
    }
};

std::optional<WordPlan> plan_lsl(const Pose& s, const Pose& e, double rho) {
    const Complex d = left_center(e, rho) - left_center(s, rho);
    WordPlan plan;
    if (std::abs(d) < kDegenerate) {
        plan.add('L', mod_2pi(e.theta - s.theta));
        return plan;
    }
    const double psi = std::arg(d);
    plan.add('L', mod_2pi(psi - s.theta));
    plan.add('S', std::abs(d));
    plan.add('L', mod_2pi(e.theta - psi));
    return plan;
}

std::optional<WordPlan> plan_rsr(const Pose& s, const Pose& e, double rho) {
    const Complex d = right_center(e, rho) - right_center(s, rho);
    WordPlan plan;
    if (std::abs(d) < kDegenerate) {
        plan.add('R', mod_2pi(s.theta - e.theta));
        return plan;
    }
    const double psi = std::arg(d);
    plan.add('R', mod_2pi(s.theta - psi));
    plan.add('S', std::abs(d));
    plan.add('R', mod_2pi(psi - e.theta));
    return plan;
}

std::optional<WordPlan> plan_lsr(const Pose& s, const Pose& e, double rho) {
    const Complex d = right_center(e, rho) - left_center(s, rho);
    const double dist2 = std::norm(d);
    const double p2 = dist2 - 4.0 * rho * rho;
    if (p2 < -1e-9 * rho * rho) return std::nullopt;
    const double p = std::sqrt(std::max(p2, 0.0));
    const double psi = std::arg(d) + std::atan2(2.0 * rho, p);
    WordPlan plan;
    plan.add('L', mod_2pi(psi - s.theta));
    plan.add('S', p);
    plan.add('R', mod_2pi(psi - e.theta));
    return plan;
}

std::optional<WordPlan> plan_rsl(const Pose& s, const Pose& e, double rho) {
    const Complex d = left_center(e, rho) - right_center(s, rho);
    const double dist2 = std::norm(d);
    const double p2 = dist2 - 4.0 * rho * rho;
    if (p2 < -1e-9 * rho * rho) return std::nullopt;
    const double p = std::sqrt(std::max(p2, 0.0));
    const double psi = std::arg(d) - std::atan2(2.0 * rho, p);
    WordPlan plan;
    plan.add('R', mod_2pi(s.theta - psi));
    plan.add('S', p);
    plan.add('L', mod_2pi(e.theta - psi));
    return plan;
}

// CCC words: the middle circle is tangent to both endpoint circles, giving
// two mirror placements; the shorter feasible one is kept.
std::optional<WordPlan> plan_lrl(const Pose& s, const Pose& e, double rho) {
    const Complex c1 = left_center(s, rho);
    const Complex c3 = left_center(e, rho);
    const Complex d = c3 - c1;
    const double dist = std::abs(d);
    if (dist > 4.0 * rho) return std::nullopt;
    const double base = std::abs(d) < kDegenerate ? 0.0 : std::arg(d);
    const double nu = std::acos(std::clamp(dist / (4.0 * rho), -1.0, 1.0));
    std::optional<WordPlan> best;
    double best_len = std::numeric_limits<double>::infinity();
    for (const double side : {+1.0, -1.0}) {
        const double a = base + side * nu;
        const Complex c2 = c1 + 2.0 * rho * std::polar(1.0, a);
        const double b = std::arg(c3 - c2);
        WordPlan plan;
        plan.add('L', mod_2pi(a - (s.theta - kPi / 2.0)));
        plan.add('R', mod_2pi((a + kPi) - b));
        plan.add('L', mod_2pi((e.theta - kPi / 2.0) - (b + kPi)));
        const double len = plan.length(rho);
        if (len < best_len) {
            best_len = len;
            best = plan;
        }
    }
    return best;
}

std::optional<WordPlan> plan_rlr(const Pose& s, const Pose& e, double rho) {
    const Complex c1 = right_center(s, rho);
    const Complex c3 = right_center(e, rho);
    const Complex d = c3 - c1;
    const double dist = std::abs(d);
    if (dist > 4.0 * rho) return std::nullopt;
    const double base = std::abs(d) < kDegenerate ? 0.0 : std::arg(d);
    const double nu = std::acos(std::clamp(dist / (4.0 * rho), -1.0, 1.0));
    std::optional<WordPlan> best;
    double best_len = std::numeric_limits<double>::infinity();
    for (const double side : {+1.0, -1.0}) {
        const double a = base + side * nu;
        const Complex c2 = c1 + 2.0 * rho * std::polar(1.0, a);
        const double b = std::arg(c3 - c2);
        WordPlan plan;
        plan.add('R', mod_2pi((s.theta + kPi / 2.0) - a));
        plan.add('L', mod_2pi(b - (a + kPi)));
        plan.add('R', mod_2pi((b + kPi) - (e.theta + kPi / 2.0)));
        const double len = plan.length(rho);
        if (len < best_len) {
            best_len = len;
            best = plan;
        }
    }
    return best;
}

// Single-turn words: straight along the start heading, one corner-rounding
// arc where the two heading lines meet, straight into the end pose. Feasible
// only when the lines intersect forward of the start and backward of the end
// with a turn angle in (0, pi).
std::optional<WordPlan> plan_single_turn(const Pose& s, const Pose& e, double rho, bool left) {
    const double delta = left ? mod_2pi(e.theta - s.theta) : mod_2pi(s.theta - e.theta);
    if (delta < 1e-9 || delta > kPi - 1e-9) return std::nullopt;
    const Complex v1 = s.direction();
    const Complex v2 = e.direction();
    const Complex g = e.position() - s.position();
    const double det = v1.real() * v2.imag() - v1.imag() * v2.real();
    if (std::abs(det) < kDegenerate) return std::nullopt;
    const double fwd = (g.real() * v2.imag() - g.imag() * v2.real()) / det;
    const double back = (v1.real() * g.imag() - v1.imag() * g.real()) / det;
    const double corner = rho * std::tan(delta / 2.0);
    if (fwd - corner < -1e-9 || back - corner < -1e-9) return std::nullopt;
    WordPlan plan;
    plan.add('S', std::max(fwd - corner, 0.0));
    plan.add(left ? 'L' : 'R', delta);
    plan.add('S', std::max(back - corner, 0.0));
    return plan;
}

std::optional<WordPlan> plan_word(WordTag tag, const Pose& s, const Pose& e, double rho) {
    switch (tag) {
        case WordTag::LSL: return plan_lsl(s, e, rho);
        case WordTag::RSR: return plan_rsr(s, e, rho);
        case WordTag::LSR: return plan_lsr(s, e, rho);
        case WordTag::RSL: return plan_rsl(s, e, rho);
        case WordTag::LRL: return plan_lrl(s, e, rho);
        case WordTag::RLR: return plan_rlr(s, e, rho);
        case WordTag::SLS: return plan_single_turn(s, e, rho, true);
        case WordTag::SRS: return plan_single_turn(s, e, rho, false);
    }
    return std::nullopt;
}

FleetPath assemble(const PathWord& word, const Pose& start, const Pose& end, const WordPlan& plan,
                   double rho, double speed) {
    FleetPath path;
    path.word = word;
    path.radius = rho;
    path.speed = speed;
    path.start = start;
    path.end = end;

    Complex pos = start.position();
    double heading = start.theta;
    double total = 0.0;
    for (int i = 0; i < plan.count; ++i) {
        const Segment& seg = plan.segs[i];
        PathPrimitive prim;
        if (seg.type == 'S') {
            prim.kind = PathPrimitive::Kind::Line;
            prim.anchor = pos;
            prim.velocity = std::polar(speed, heading);
            prim.duration = seg.param / speed;
            pos += std::polar(seg.param, heading);
            total += seg.param;
        } else {
            const bool leftTurn = seg.type == 'L';
            const double sign = leftTurn ? 1.0 : -1.0;
            prim.kind = PathPrimitive::Kind::Arc;
            prim.center = pos + sign * Complex{0.0, rho} * std::polar(1.0, heading);
            prim.radius = rho;
            prim.angular_rate = sign * speed / rho;
            prim.phase = heading - sign * kPi / 2.0;
            prim.duration = seg.param * rho / speed;
            heading = normalize_angle(heading + sign * seg.param);
            pos = prim.center + std::polar(rho, prim.phase + sign * seg.param);
            total += seg.param * rho;
        }
        path.primitives.push_back(prim);
    }
    path.total_length = total;
    return path;
}

}  // namespace

std::string to_string(WordTag tag) {
    switch (tag) {
        case WordTag::LSL: return "LSL";
        case WordTag::RSR: return "RSR";
        case WordTag::LSR: return "LSR";
        case WordTag::RSL: return "RSL";
        case WordTag::LRL: return "LRL";
        case WordTag::RLR: return "RLR";
        case WordTag::SLS: return "SLS";
        case WordTag::SRS: return "SRS";
    }
    return "?";
}

std::string to_string(const PathWord& word) {
    const std::string core = to_string(word.tag);
    switch (word.extension) {
        case Extension::None: return core;
        case Extension::StartExtended: return "S-" + core;
        case Extension::EndExtended: return core + "-S";
        case Extension::BothExtended: return "S-" + core + "-S";
    }
    return core;
}

std::optional<WordTag> word_tag_from_string(const std::string& s) {
    static const std::array<WordTag, kBasicWordCount> tags = {
        WordTag::LSL, WordTag::RSR, WordTag::LSR, WordTag::RSL,
        WordTag::LRL, WordTag::RLR, WordTag::SLS, WordTag::SRS};
    for (WordTag t : tags) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

Pose FleetPath::eval(double t) const {
    const double tau = duration();
    if (t < -1e-9 || t > tau + 1e-9) {
        throw std::out_of_range("path evaluation time outside [0, duration]");
    }
    if (primitives.empty() || t <= 0.0) return start;
    t = std::clamp(t, 0.0, tau);
    double t0 = 0.0;
    for (const PathPrimitive& prim : primitives) {
        if (t <= t0 + prim.duration || &prim == &primitives.back()) {
            return prim.pose_at(std::clamp(t - t0, 0.0, prim.duration));
        }
        t0 += prim.duration;
    }
    return end;
}

std::optional<FleetPath> build_word(const PathWord& word, const Pose& start, const Pose& end,
                                    double radius, double speed) {
    if (radius <= 0.0 || speed <= 0.0) return std::nullopt;
    const auto plan = plan_word(word.tag, start, end, radius);
    if (!plan) return std::nullopt;
    FleetPath path = assemble(word, start, end, *plan, radius, speed);
    // Construction sanity: the assembled chain must land on the end pose.
    const Pose reached = path.primitives.empty() ? start : path.eval(path.duration());
    if (std::abs(reached.x - end.x) > 1e-6 || std::abs(reached.y - end.y) > 1e-6 ||
        std::abs(normalize_angle(reached.theta - end.theta)) > 1e-6) {
        return std::nullopt;
    }
    return path;
}

ShortestResult shortest_dubins(const Pose& start, const Pose& end, const VehicleParams& params) {
    if (nearly_same_pose(start, end)) {
        FleetPath zero;
        zero.speed = params.speed;
        zero.radius = params.min_turn_radius;
        zero.start = start;
        zero.end = end;
        return {0.0, zero};
    }
    std::optional<FleetPath> best;
    for (int i = 0; i < kBasicWordCount; ++i) {
        auto path = build_word({static_cast<WordTag>(i), Extension::None}, start, end,
                               params.min_turn_radius, params.speed);
        if (path && (!best || path->total_length < best->total_length)) {
            best = std::move(path);
        }
    }
    // LSL and RSR exist for every distinct pose pair, so `best` is set.
    return {best->total_length / params.speed, std::move(*best)};
}

}  // namespace dubfleet
