#include "dubfleet/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dubfleet/interval.hpp"

namespace dubfleet {

namespace {

constexpr double kTiny = 1e-12;

// ---------------------------------------------------------------------------
// Shape primitives for the exact spatial tests.

struct SegmentShape {
    Complex p0, p1;
};

// Counterclockwise angular interval [a0, a0 + extent] on a circle, with
// extent clamped to a full turn.
struct ArcShape {
    Complex center;
    double radius{0.0};
    double a0{0.0};
    double extent{0.0};

    [[nodiscard]] Complex point_at(double ang) const { return center + std::polar(radius, ang); }
    [[nodiscard]] bool contains_angle(double ang) const {
        return mod_2pi(ang - a0) <= extent + 1e-12 || extent >= kTwoPi - 1e-12;
    }
    [[nodiscard]] Complex endpoint0() const { return point_at(a0); }
    [[nodiscard]] Complex endpoint1() const { return point_at(a0 + extent); }
};

SegmentShape segment_of(const PathPrimitive& prim) {
    return {prim.anchor, prim.anchor + prim.velocity * prim.duration};
}

ArcShape arc_of(const PathPrimitive& prim) {
    ArcShape arc;
    arc.center = prim.center;
    arc.radius = prim.radius;
    const double sweep = prim.angular_rate * prim.duration;
    arc.extent = std::min(std::abs(sweep), kTwoPi);
    arc.a0 = sweep >= 0.0 ? prim.phase : prim.phase + sweep;
    return arc;
}

double point_segment_distance(Complex p, const SegmentShape& seg) {
    const Complex d = seg.p1 - seg.p0;
    const double len2 = std::norm(d);
    if (len2 < kTiny) return std::abs(p - seg.p0);
    double s = ((p.real() - seg.p0.real()) * d.real() + (p.imag() - seg.p0.imag()) * d.imag()) /
               len2;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(p - (seg.p0 + d * s));
}

double point_arc_distance(Complex p, const ArcShape& arc) {
    const Complex rel = p - arc.center;
    const double dist = std::abs(rel);
    if (dist < kTiny) return arc.radius;
    if (arc.contains_angle(std::arg(rel))) return std::abs(dist - arc.radius);
    return std::min(std::abs(p - arc.endpoint0()), std::abs(p - arc.endpoint1()));
}

double segment_segment_distance(const SegmentShape& a, const SegmentShape& b) {
    const Complex da = a.p1 - a.p0;
    const Complex db = b.p1 - b.p0;
    const Complex g = b.p0 - a.p0;
    const double cross_d = da.real() * db.imag() - da.imag() * db.real();
    if (std::abs(cross_d) > kTiny) {
        const double s = (g.real() * db.imag() - g.imag() * db.real()) / cross_d;
        const double u = (g.real() * da.imag() - g.imag() * da.real()) / cross_d;
        if (s >= 0.0 && s <= 1.0 && u >= 0.0 && u <= 1.0) return 0.0;
    }
    return std::min(std::min(point_segment_distance(a.p0, b), point_segment_distance(a.p1, b)),
                    std::min(point_segment_distance(b.p0, a), point_segment_distance(b.p1, a)));
}

double segment_arc_distance(const SegmentShape& seg, const ArcShape& arc) {
    const Complex d = seg.p1 - seg.p0;
    const double len2 = std::norm(d);
    if (len2 < kTiny) return point_arc_distance(seg.p0, arc);

    // Segment-circle intersections within the arc span mean contact.
    const Complex rel = seg.p0 - arc.center;
    const double qa = len2;
    const double qb = 2.0 * (rel.real() * d.real() + rel.imag() * d.imag());
    const double qc = std::norm(rel) - arc.radius * arc.radius;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        for (const double s : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
            if (s < 0.0 || s > 1.0) continue;
            const Complex p = seg.p0 + d * s;
            if (arc.contains_angle(std::arg(p - arc.center))) return 0.0;
        }
    }

    double best = std::numeric_limits<double>::infinity();
    // Interior critical point: foot of the perpendicular from the center.
    const double s_foot = -(rel.real() * d.real() + rel.imag() * d.imag()) / len2;
    if (s_foot >= 0.0 && s_foot <= 1.0) {
        const Complex p = seg.p0 + d * s_foot;
        const Complex pr = p - arc.center;
        if (std::abs(pr) < kTiny) {
            best = std::min(best, arc.radius);
        } else if (arc.contains_angle(std::arg(pr))) {
            best = std::min(best, std::abs(std::abs(pr) - arc.radius));
        }
    }
    best = std::min(best, point_arc_distance(seg.p0, arc));
    best = std::min(best, point_arc_distance(seg.p1, arc));
    best = std::min(best, point_segment_distance(arc.endpoint0(), seg));
    best = std::min(best, point_segment_distance(arc.endpoint1(), seg));
    return best;
}

double arc_arc_distance(const ArcShape& a, const ArcShape& b) {
    const Complex d = b.center - a.center;
    const double dist = std::abs(d);

    double best = std::numeric_limits<double>::infinity();
    if (dist < kTiny) {
        // Concentric: any shared angle realizes |r1 - r2|.
        if (a.contains_angle(b.a0) || a.contains_angle(b.a0 + b.extent) ||
            b.contains_angle(a.a0) || b.contains_angle(a.a0 + a.extent)) {
            best = std::abs(a.radius - b.radius);
        }
    } else {
        // Circle-circle intersections within both spans mean contact.
        if (dist <= a.radius + b.radius && dist >= std::abs(a.radius - b.radius)) {
            const double x = (dist * dist + a.radius * a.radius - b.radius * b.radius) /
                             (2.0 * dist);
            const double h2 = a.radius * a.radius - x * x;
            const double h = std::sqrt(std::max(h2, 0.0));
            const Complex u = d / dist;
            for (const double side : {+1.0, -1.0}) {
                const Complex p = a.center + u * x + Complex{0.0, side * h} * u;
                if (a.contains_angle(std::arg(p - a.center)) &&
                    b.contains_angle(std::arg(p - b.center))) {
                    return 0.0;
                }
            }
        }
        // Smooth interior minima lie on the line through the centers.
        const double ang_ab = std::arg(d);
        for (const double sa : {0.0, kPi}) {
            const double ang_a = ang_ab + sa;
            if (!a.contains_angle(ang_a)) continue;
            for (const double sb : {0.0, kPi}) {
                const double ang_b = ang_ab + kPi + sb;
                if (!b.contains_angle(ang_b)) continue;
                best = std::min(best, std::abs(a.point_at(ang_a) - b.point_at(ang_b)));
            }
        }
    }
    best = std::min(best, point_arc_distance(a.endpoint0(), b));
    best = std::min(best, point_arc_distance(a.endpoint1(), b));
    best = std::min(best, point_arc_distance(b.endpoint0(), a));
    best = std::min(best, point_arc_distance(b.endpoint1(), a));
    return best;
}

// ---------------------------------------------------------------------------
// Temporal separation: exact for line-line, interval branch-and-bound with a
// Lipschitz midpoint bound otherwise.

double primitive_speed(const PathPrimitive& prim) {
    if (prim.kind == PathPrimitive::Kind::Line) return std::abs(prim.velocity);
    return prim.radius * std::abs(prim.angular_rate);
}

Complex leg_position(const TimedLeg& leg, double t) { return leg.position_at(t); }

double point_gap(const TimedLeg& a, const TimedLeg& b, double t) {
    return std::abs(leg_position(a, t) - leg_position(b, t));
}

void leg_range(const TimedLeg& leg, const Interval& t, Interval& x, Interval& y) {
    const PathPrimitive& p = leg.primitive;
    const Interval local = t - leg.t_start;
    if (p.kind == PathPrimitive::Kind::Line) {
        x = local * p.velocity.real() + p.anchor.real();
        y = local * p.velocity.imag() + p.anchor.imag();
    } else {
        const Interval ang = local * p.angular_rate + p.phase;
        x = cos(ang) * p.radius + p.center.real();
        y = sin(ang) * p.radius + p.center.imag();
    }
}

double gap_squared_lower_bound(const TimedLeg& a, const TimedLeg& b, const Interval& t) {
    Interval xa, ya, xb, yb;
    leg_range(a, t, xa, ya);
    leg_range(b, t, xb, yb);
    const Interval g = sqr(xa - xb) + sqr(ya - yb);
    return std::max(g.lo, 0.0);
}

bool both_lines(const TimedLeg& a, const TimedLeg& b) {
    return a.primitive.kind == PathPrimitive::Kind::Line &&
           b.primitive.kind == PathPrimitive::Kind::Line;
}

// Exact minimum gap between two lines over [t_lo, t_hi]: |dv t + da| is a
// quadratic in t.
double line_line_min_gap(const TimedLeg& a, const TimedLeg& b, double t_lo, double t_hi) {
    const Complex dv = a.primitive.velocity - b.primitive.velocity;
    const Complex da = (a.primitive.anchor - a.primitive.velocity * a.t_start) -
                       (b.primitive.anchor - b.primitive.velocity * b.t_start);
    double best = std::min(std::abs(dv * t_lo + da), std::abs(dv * t_hi + da));
    const double dv2 = std::norm(dv);
    if (dv2 > kTiny) {
        const double t_star = -(da.real() * dv.real() + da.imag() * dv.imag()) / dv2;
        if (t_star > t_lo && t_star < t_hi) best = std::min(best, std::abs(dv * t_star + da));
    }
    return best;
}

struct TimeBox {
    double lo, hi;
};

// Branch-and-bound decision: does the gap stay strictly above delta on the
// window? The Lipschitz bound uses |d'(t)| <= speed_a + speed_b; pruning
// keeps every certified lower bound on the conservative side.
bool legs_separated_bnb(const TimedLeg& a, const TimedLeg& b, double t_lo, double t_hi,
                        double delta) {
    const double lip = primitive_speed(a.primitive) + primitive_speed(b.primitive);
    const double thr2 = (delta + kSeparationTolerance) * (delta + kSeparationTolerance);
    std::vector<TimeBox> stack{{t_lo, t_hi}};
    while (!stack.empty()) {
        const TimeBox box = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (box.lo + box.hi);
        const double dm = point_gap(a, b, mid);
        if (dm <= delta) return false;
        const double half = 0.5 * (box.hi - box.lo);
        if (dm - lip * half > delta) continue;
        if (gap_squared_lower_bound(a, b, {box.lo, box.hi}) > thr2) continue;
        if (2.0 * half * lip < kSeparationTolerance) return false;  // unresolved: conflict
        stack.push_back({box.lo, mid});
        stack.push_back({mid, box.hi});
    }
    return true;
}

double min_gap_bnb(const TimedLeg& a, const TimedLeg& b, double t_lo, double t_hi) {
    const double lip = primitive_speed(a.primitive) + primitive_speed(b.primitive);
    double best = std::min(point_gap(a, b, t_lo), point_gap(a, b, t_hi));
    std::vector<TimeBox> stack{{t_lo, t_hi}};
    while (!stack.empty()) {
        const TimeBox box = stack.back();
        stack.pop_back();
        const double lb = std::sqrt(gap_squared_lower_bound(a, b, {box.lo, box.hi}));
        if (lb >= best - kSeparationTolerance) continue;
        const double mid = 0.5 * (box.lo + box.hi);
        best = std::min(best, point_gap(a, b, mid));
        const double half = 0.5 * (box.hi - box.lo);
        if (point_gap(a, b, mid) - lip * half >= best - kSeparationTolerance) continue;
        stack.push_back({box.lo, mid});
        stack.push_back({mid, box.hi});
    }
    return best;
}

}  // namespace

double box_distance(const Aabb& a, const Aabb& b) {
    const double dx = std::max({0.0, a.xmin - b.xmax, b.xmin - a.xmax});
    const double dy = std::max({0.0, a.ymin - b.ymax, b.ymin - a.ymax});
    return std::hypot(dx, dy);
}

Aabb primitive_box(const PathPrimitive& prim) {
    Aabb box;
    if (prim.kind == PathPrimitive::Kind::Line) {
        const SegmentShape seg = segment_of(prim);
        box.xmin = std::min(seg.p0.real(), seg.p1.real());
        box.xmax = std::max(seg.p0.real(), seg.p1.real());
        box.ymin = std::min(seg.p0.imag(), seg.p1.imag());
        box.ymax = std::max(seg.p0.imag(), seg.p1.imag());
        return box;
    }
    const ArcShape arc = arc_of(prim);
    const Complex e0 = arc.endpoint0();
    const Complex e1 = arc.endpoint1();
    box.xmin = std::min(e0.real(), e1.real());
    box.xmax = std::max(e0.real(), e1.real());
    box.ymin = std::min(e0.imag(), e1.imag());
    box.ymax = std::max(e0.imag(), e1.imag());
    // Axis-aligned extremes of the circle reached within the span.
    const double axes[4] = {0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0};
    for (double ang : axes) {
        if (!arc.contains_angle(ang)) continue;
        const Complex p = arc.point_at(ang);
        box.xmin = std::min(box.xmin, p.real());
        box.xmax = std::max(box.xmax, p.real());
        box.ymin = std::min(box.ymin, p.imag());
        box.ymax = std::max(box.ymax, p.imag());
    }
    return box;
}

double spatial_separation(const PathPrimitive& a, const PathPrimitive& b) {
    const bool a_line = a.kind == PathPrimitive::Kind::Line;
    const bool b_line = b.kind == PathPrimitive::Kind::Line;
    if (a_line && b_line) return segment_segment_distance(segment_of(a), segment_of(b));
    if (a_line) return segment_arc_distance(segment_of(a), arc_of(b));
    if (b_line) return segment_arc_distance(segment_of(b), arc_of(a));
    return arc_arc_distance(arc_of(a), arc_of(b));
}

double temporal_separation(const TimedLeg& a, const TimedLeg& b, double t_lo, double t_hi) {
    if (both_lines(a, b)) return line_line_min_gap(a, b, t_lo, t_hi);
    if (t_hi - t_lo < kTiny) return point_gap(a, b, t_lo);
    return min_gap_bnb(a, b, t_lo, t_hi);
}

std::vector<TimedLeg> timed_legs(const FleetPath& path) {
    std::vector<TimedLeg> legs;
    legs.reserve(path.primitives.size());
    double t = 0.0;
    for (const PathPrimitive& prim : path.primitives) {
        legs.push_back({prim, t, t + prim.duration});
        t += prim.duration;
    }
    return legs;
}

namespace {

PathGeometry geometry_from_legs(std::span<const TimedLeg> legs, Complex start_point,
                                double duration) {
    PathGeometry geom;
    geom.duration = duration;
    geom.start_point = start_point;
    for (const TimedLeg& leg : legs) {
        if (leg.t_end - leg.t_start <= kTiny) continue;  // zero-duration legs skipped
        geom.legs.push_back(leg);
        geom.leg_boxes.push_back(primitive_box(leg.primitive));
    }
    if (!geom.legs.empty()) {
        geom.path_box = geom.leg_boxes.front();
        for (const Aabb& b : geom.leg_boxes) {
            geom.path_box.xmin = std::min(geom.path_box.xmin, b.xmin);
            geom.path_box.xmax = std::max(geom.path_box.xmax, b.xmax);
            geom.path_box.ymin = std::min(geom.path_box.ymin, b.ymin);
            geom.path_box.ymax = std::max(geom.path_box.ymax, b.ymax);
        }
    } else {
        geom.path_box = {start_point.real(), start_point.real(), start_point.imag(),
                         start_point.imag()};
    }
    return geom;
}

}  // namespace

PathGeometry make_path_geometry(const FleetPath& path) {
    return geometry_from_legs(timed_legs(path), path.start.position(), path.duration());
}

bool geometries_separated(const PathGeometry& a, const PathGeometry& b, double delta,
                          SepCounters& counters) {
    ++counters.pair_checks;
    if (a.legs.empty() || b.legs.empty()) {
        // Zero-length hold: compare the hold point against the other path's
        // start (the only shared instant is t = 0).
        return std::abs(a.start_point - b.start_point) > delta;
    }
    if (box_distance(a.path_box, b.path_box) > delta) return true;
    for (std::size_t i = 0; i < a.legs.size(); ++i) {
        const TimedLeg& la = a.legs[i];
        for (std::size_t j = 0; j < b.legs.size(); ++j) {
            const TimedLeg& lb = b.legs[j];
            const double lo = std::max(la.t_start, lb.t_start);
            const double hi = std::min(la.t_end, lb.t_end);
            if (lo > hi) continue;
            if (box_distance(a.leg_boxes[i], b.leg_boxes[j]) > delta) continue;
            if (spatial_separation(la.primitive, lb.primitive) > delta) continue;
            if (both_lines(la, lb)) {
                if (line_line_min_gap(la, lb, lo, hi) <= delta) return false;
                continue;
            }
            ++counters.temporal_solves;
            if (hi - lo < kTiny) {
                if (point_gap(la, lb, lo) <= delta) return false;
                continue;
            }
            if (!legs_separated_bnb(la, lb, lo, hi, delta)) return false;
        }
    }
    return true;
}

bool is_pair_separated(std::span<const TimedLeg> pa, std::span<const TimedLeg> pb, double delta) {
    const auto total = [](std::span<const TimedLeg> legs) {
        return legs.empty() ? 0.0 : legs.back().t_end;
    };
    if (std::abs(total(pa) - total(pb)) > kDurationSlack) {
        throw MismatchedDuration("paths cover different time spans");
    }
    const auto start_of = [](std::span<const TimedLeg> legs) {
        return legs.empty() ? Complex{} : legs.front().position_at(legs.front().t_start);
    };
    SepCounters counters;
    return geometries_separated(geometry_from_legs(pa, start_of(pa), total(pa)),
                                geometry_from_legs(pb, start_of(pb), total(pb)), delta, counters);
}

bool is_pair_separated(const FleetPath& a, const FleetPath& b, double delta) {
    if (std::abs(a.duration() - b.duration()) > kDurationSlack) {
        throw MismatchedDuration("paths cover different time spans");
    }
    SepCounters counters;
    return geometries_separated(make_path_geometry(a), make_path_geometry(b), delta, counters);
}

bool are_separated(double delta, const std::vector<FleetPath>& paths) {
    for (std::size_t i = 1; i < paths.size(); ++i) {
        if (std::abs(paths[i].duration() - paths[0].duration()) > kDurationSlack) {
            throw MismatchedDuration("fleet paths cover different time spans");
        }
    }
    std::vector<PathGeometry> geoms;
    geoms.reserve(paths.size());
    for (const FleetPath& p : paths) geoms.push_back(make_path_geometry(p));

    const std::size_t n = geoms.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    bool all_clear = true;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(&& : all_clear)
#endif
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (!all_clear) continue;
        SepCounters counters;
        all_clear = all_clear &&
                    geometries_separated(geoms[pairs[p].first], geoms[pairs[p].second], delta,
                                         counters);
    }
    return all_clear;
}

}  // namespace dubfleet
