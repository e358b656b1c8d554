#include "dubfleet/length_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dubfleet/brent.hpp"

namespace dubfleet {

namespace {

constexpr double kPenalty = 1e30;
constexpr int kPanels = 8;
constexpr int kMaxEvalsPerPanel = 120;

// Minimize `objective` over [lo, hi] with one Brent run per panel. The
// panelling rides out the discontinuities of the length-vs-parameter maps.
template <typename F>
std::optional<BrentResult> panelled_minimize(F&& objective, double lo, double hi, double x_tol) {
    std::optional<BrentResult> best;
    const double width = (hi - lo) / kPanels;
    for (int p = 0; p < kPanels; ++p) {
        const double a = lo + p * width;
        const double b = p + 1 == kPanels ? hi : a + width;
        auto r = brent_minimize(objective, a, b, x_tol, kMaxEvalsPerPanel);
        if (r && (!best || r->fx < best->fx)) best = r;
    }
    return best;
}

double word_length_at_radius(const PathWord& word, const Pose& s, const Pose& e, double rho,
                             double speed) {
    const auto path = build_word(word, s, e, rho, speed);
    return path ? path->total_length : kPenalty;
}

// Brent leaves the squared residual at its x tolerance; when the signed
// residual changes sign near the minimizer, bisecting it pins the fit to
// machine precision instead.
template <typename LenF>
double polish_fit(LenF&& length_at, double x, double lo, double hi, double target) {
    const auto residual = [&](double v) {
        const double len = length_at(v);
        return len >= kPenalty ? std::numeric_limits<double>::quiet_NaN() : len - target;
    };
    const double f0 = residual(x);
    if (!std::isfinite(f0) || f0 == 0.0) return x;
    double step = std::max(1e-9 * (hi - lo), 1e-12);
    double a = x, b = x;
    double fa = f0, fb = f0;
    bool bracketed = false;
    for (int i = 0; i < 48 && !bracketed; ++i) {
        if (a > lo) {
            a = std::max(lo, a - step);
            fa = residual(a);
            if (std::isfinite(fa) && fa * f0 <= 0.0) {
                b = x;
                fb = f0;
                bracketed = true;
                break;
            }
        }
        if (b < hi) {
            b = std::min(hi, b + step);
            fb = residual(b);
            if (std::isfinite(fb) && fb * f0 <= 0.0) {
                a = x;
                fa = f0;
                bracketed = true;
                break;
            }
        }
        step *= 2.0;
        if (a <= lo && b >= hi) break;
    }
    if (!bracketed || !std::isfinite(fa) || !std::isfinite(fb)) return x;
    for (int i = 0; i < 90; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = residual(m);
        if (!std::isfinite(fm)) break;  // infeasible pocket inside the bracket
        if (fa * fm <= 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    const double candidate = 0.5 * (a + b);
    const double fc = residual(candidate);
    return std::isfinite(fc) && std::abs(fc) < std::abs(f0) ? candidate : x;
}

Extension extension_for_ratio(double ratio) {
    if (ratio >= 1.0) return Extension::StartExtended;
    if (ratio <= 0.0) return Extension::EndExtended;
    return Extension::BothExtended;
}

// Assemble prefix straight + inner word + suffix straight for a given total
// extension length l.
std::optional<FleetPath> build_extended(const PathWord& word, double ratio, double l,
                                        const Pose& start, const Pose& end,
                                        const VehicleParams& params) {
    const double prefix = l * ratio;
    const double suffix = l * (1.0 - ratio);
    const Pose inner_start{start.x + prefix * std::cos(start.theta),
                           start.y + prefix * std::sin(start.theta), start.theta};
    const Pose inner_end{end.x - suffix * std::cos(end.theta),
                         end.y - suffix * std::sin(end.theta), end.theta};
    auto core = build_word({word.tag, Extension::None}, inner_start, inner_end,
                           params.min_turn_radius, params.speed);
    if (!core) return std::nullopt;

    FleetPath path;
    path.word = {word.tag, extension_for_ratio(ratio)};
    path.radius = params.min_turn_radius;
    path.extension_length = l;
    path.speed = params.speed;
    path.start = start;
    path.end = end;
    path.total_length = core->total_length + prefix + suffix;

    if (prefix > 0.0) {
        PathPrimitive lead;
        lead.kind = PathPrimitive::Kind::Line;
        lead.anchor = start.position();
        lead.velocity = std::polar(params.speed, start.theta);
        lead.duration = prefix / params.speed;
        path.primitives.push_back(lead);
    }
    path.primitives.insert(path.primitives.end(), core->primitives.begin(),
                           core->primitives.end());
    if (suffix > 0.0) {
        PathPrimitive tail;
        tail.kind = PathPrimitive::Kind::Line;
        tail.anchor = inner_end.position();
        tail.velocity = std::polar(params.speed, end.theta);
        tail.duration = suffix / params.speed;
        path.primitives.push_back(tail);
    }
    return path;
}

}  // namespace

std::optional<FleetPath> fit_radius(const PathWord& word, const Pose& start, const Pose& end,
                                    const FitTarget& target, const VehicleParams& params) {
    if (target.target_length <= 0.0) return std::nullopt;
    const double rho_min = params.min_turn_radius;
    const double base_len = word_length_at_radius(word, start, end, rho_min, params.speed);
    if (base_len < kPenalty) {
        if (std::abs(base_len - target.target_length) <= target.length_tolerance) {
            return build_word(word, start, end, rho_min, params.speed);
        }
        if (target.target_length < base_len) return std::nullopt;
    }

    const double rho_max = std::max(10.0 * rho_min, target.target_length / kPi);
    const auto objective = [&](double rho) {
        const double len = word_length_at_radius(word, start, end, rho, params.speed);
        if (len >= kPenalty) return kPenalty;
        const double r = len - target.target_length;
        return r * r;
    };
    const auto best = panelled_minimize(objective, rho_min, rho_max,
                                        std::max(1e-9, 1e-12 * rho_max));
    if (!best || best->fx >= kPenalty) return std::nullopt;
    const auto length_at = [&](double rho) {
        return word_length_at_radius(word, start, end, rho, params.speed);
    };
    const double rho = polish_fit(length_at, best->x, rho_min, rho_max, target.target_length);
    auto path = build_word(word, start, end, rho, params.speed);
    if (!path || std::abs(path->total_length - target.target_length) > target.length_tolerance) {
        return std::nullopt;
    }
    return path;
}

std::optional<FleetPath> fit_extension(const PathWord& word, double ratio, const Pose& start,
                                       const Pose& end, const FitTarget& target,
                                       const VehicleParams& params) {
    if (target.target_length <= 0.0) return std::nullopt;

    const auto length_at = [&](double l) {
        const auto path = build_extended(word, ratio, l, start, end, params);
        return path ? path->total_length : kPenalty;
    };
    const double base_len = length_at(0.0);
    if (base_len < kPenalty &&
        std::abs(base_len - target.target_length) <= target.length_tolerance) {
        return build_extended(word, ratio, 0.0, start, end, params);
    }

    const double l_max = target.target_length;
    const auto objective = [&](double l) {
        const double len = length_at(l);
        if (len >= kPenalty) return kPenalty;
        const double r = len - target.target_length;
        return r * r;
    };
    const auto best = panelled_minimize(objective, 0.0, l_max, std::max(1e-9, 1e-12 * l_max));
    if (!best || best->fx >= kPenalty) return std::nullopt;
    const double l = polish_fit(length_at, best->x, 0.0, l_max, target.target_length);
    auto path = build_extended(word, ratio, l, start, end, params);
    if (!path || std::abs(path->total_length - target.target_length) > target.length_tolerance) {
        return std::nullopt;
    }
    return path;
}

std::optional<FleetPath> run_fit_task(int index, const Pose& start, const Pose& end,
                                      const VehicleParams& params, double tau) {
    if (tau <= 0.0) return std::nullopt;
    const FitTarget target = FitTarget::for_length(tau * params.speed);
    const PathWord word{static_cast<WordTag>(index / 4), Extension::None};
    const int mode = index % 4;
    if (mode == 0) return fit_radius(word, start, end, target, params);
    static constexpr double kRatios[3] = {0.0, 0.5, 1.0};
    return fit_extension(word, kRatios[mode - 1], start, end, target, params);
}

std::vector<FleetPath> dedup_paths(std::vector<FleetPath> paths) {
    constexpr int kSamples = 16;
    std::vector<FleetPath> unique;
    for (auto& candidate : paths) {
        const double tau_c = candidate.duration();
        bool duplicate = false;
        for (const auto& kept : unique) {
            if (std::abs(kept.duration() - tau_c) > 1e-9) continue;
            bool same = true;
            for (int i = 0; i < kSamples && same; ++i) {
                const double t = tau_c * i / (kSamples - 1);
                const Complex a = kept.eval(t).position();
                const Complex b = candidate.eval(t).position();
                if (std::abs(a - b) > 1e-6) same = false;
            }
            if (same) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) unique.push_back(std::move(candidate));
    }
    return unique;
}

std::vector<FleetPath> fit_dubins(const Pose& start, const Pose& end, const VehicleParams& params,
                                  double tau) {
    std::vector<std::optional<FleetPath>> slots(kFitTaskCount);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < kFitTaskCount; ++i) {
        slots[i] = run_fit_task(i, start, end, params, tau);
    }
    std::vector<FleetPath> fitted;
    for (auto& slot : slots) {
        if (slot) fitted.push_back(std::move(*slot));
    }
    return dedup_paths(std::move(fitted));
}

}  // namespace dubfleet
