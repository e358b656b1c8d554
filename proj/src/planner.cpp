#include "dubfleet/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dubfleet/length_fit.hpp"

namespace dubfleet {

namespace {

constexpr double kTauDedup = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

double Scenario::cumulative_offset(int k) const {
    double sum = 0.0;
    for (int j = 0; j <= k && j < static_cast<int>(arrival_offsets.size()); ++j) {
        sum += arrival_offsets[j];
    }
    return sum;
}

void Scenario::validate() const {
    if (starts.empty()) throw InvalidScenario("scenario has no aircraft");
    if (ends.size() != starts.size() || arrival_offsets.size() != starts.size()) {
        throw InvalidScenario("starts, ends and arrival_offsets must have equal length");
    }
    if (!params.valid()) throw InvalidScenario("vehicle parameters must be positive");
    if (std::abs(wind) >= params.speed) {
        throw InvalidScenario("wind speed must stay below the cruise air speed");
    }
    for (double dt : arrival_offsets) {
        if (dt < 0.0) throw InvalidScenario("arrival offsets must be non-negative");
    }
    if (!arrival_offsets.empty() && arrival_offsets.front() != 0.0) {
        throw InvalidScenario("first arrival offset must be zero");
    }
}

bool TimeQueue::insert(double tau, bool tested) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), tau,
                               [](const Entry& e, double v) { return e.tau < v; });
    if (it != entries_.end() && std::abs(it->tau - tau) <= kTauDedup) return false;
    if (it != entries_.begin() && std::abs(std::prev(it)->tau - tau) <= kTauDedup) return false;
    entries_.insert(it, {tau, tested});
    return true;
}

void TimeQueue::prune_at_or_above(double tau_best) {
    std::erase_if(entries_, [&](const Entry& e) { return e.tau >= tau_best - kTauDedup; });
    // The solution time itself stays as a tested anchor so refinement can
    // keep sampling the gap just below it.
    insert(tau_best, true);
}

std::string to_string(PlanStatus status) {
    switch (status) {
        case PlanStatus::Solved: return "Solved";
        case PlanStatus::NoSolution: return "NoSolution";
        case PlanStatus::Timeout: return "Timeout";
        case PlanStatus::IterationLimit: return "IterationLimit";
        case PlanStatus::NoProgress: return "NoProgress";
    }
    return "?";
}

int resolve_worker_count(int requested) {
    int count = requested;
#ifdef _OPENMP
    if (count <= 0) count = omp_get_max_threads();
#else
    if (count <= 0) count = 1;
#endif
    if (const char* cap = std::getenv("DUBINS_FLEET_THREADS")) {
        const int limit = std::atoi(cap);
        if (limit > 0) count = std::min(count, limit);
    }
    return std::max(count, 1);
}

std::pair<double, double> initial_bounds(const Scenario& scenario, double time_ratio) {
    double tau_min = 0.0;
    for (int k = 0; k < scenario.size(); ++k) {
        const auto shortest = shortest_dubins(scenario.starts[k], scenario.ends[k],
                                              scenario.params);
        tau_min = std::max(tau_min, std::max(0.0, shortest.tau - scenario.cumulative_offset(k)));
    }
    return {tau_min, time_ratio * tau_min};
}

Pose wind_shifted_end(const Pose& end, Complex wind, double tau_k) {
    return {end.x - wind.real() * tau_k, end.y - wind.imag() * tau_k, end.theta};
}

namespace {

std::vector<FleetPath> candidates_for_aircraft(const Scenario& scenario, int k, double tau) {
    const double tau_k = tau + scenario.cumulative_offset(k);
    const Pose end = wind_shifted_end(scenario.ends[k], scenario.wind, tau_k);
    const Pose& start = scenario.starts[k];
    if (tau_k <= 0.0) {
        // Hold-position endpoint: only a zero-length path can satisfy a zero
        // flight time.
        if (nearly_same_pose(start, end)) {
            return {shortest_dubins(start, end, scenario.params).path};
        }
        return {};
    }
    return fit_dubins(start, end, scenario.params, tau_k);
}

}  // namespace

std::vector<std::vector<FleetPath>> build_candidates_serial(const Scenario& scenario,
                                                            double tau) {
    std::vector<std::vector<FleetPath>> result(scenario.size());
    for (int k = 0; k < scenario.size(); ++k) {
        const double tau_k = tau + scenario.cumulative_offset(k);
        if (tau_k <= 0.0) {
            result[k] = candidates_for_aircraft(scenario, k, tau);
            continue;
        }
        const Pose end = wind_shifted_end(scenario.ends[k], scenario.wind, tau_k);
        std::vector<FleetPath> fitted;
        for (int fit = 0; fit < kFitTaskCount; ++fit) {
            auto path = run_fit_task(fit, scenario.starts[k], end, scenario.params, tau_k);
            if (path) fitted.push_back(std::move(*path));
        }
        result[k] = dedup_paths(std::move(fitted));
    }
    return result;
}

std::vector<std::vector<FleetPath>> build_candidates(const Scenario& scenario, double tau,
                                                     int threads) {
    const int n = scenario.size();
    std::vector<std::vector<FleetPath>> result(n);

    // Flat task list over (aircraft, fit index); per-aircraft compaction and
    // dedup run serially afterwards, so scheduling cannot reorder results.
    struct Slot {
        std::optional<FleetPath> path;
    };
    std::vector<double> tau_k(n);
    std::vector<Pose> fit_ends(n);
    std::vector<char> degenerate(n, 0);
    for (int k = 0; k < n; ++k) {
        tau_k[k] = tau + scenario.cumulative_offset(k);
        fit_ends[k] = wind_shifted_end(scenario.ends[k], scenario.wind, tau_k[k]);
        degenerate[k] = tau_k[k] <= 0.0 ? 1 : 0;
    }
    std::vector<Slot> slots(static_cast<std::size_t>(n) * kFitTaskCount);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int task = 0; task < n * kFitTaskCount; ++task) {
        const int k = task / kFitTaskCount;
        const int fit = task % kFitTaskCount;
        if (degenerate[k]) continue;
        slots[task].path = run_fit_task(fit, scenario.starts[k], fit_ends[k], scenario.params,
                                        tau_k[k]);
    }

    for (int k = 0; k < n; ++k) {
        if (degenerate[k]) {
            result[k] = candidates_for_aircraft(scenario, k, tau);
            continue;
        }
        std::vector<FleetPath> fitted;
        for (int fit = 0; fit < kFitTaskCount; ++fit) {
            auto& slot = slots[static_cast<std::size_t>(k) * kFitTaskCount + fit];
            if (slot.path) fitted.push_back(std::move(*slot.path));
        }
        result[k] = dedup_paths(std::move(fitted));
    }
    return result;
}

namespace {

// Pair blocks are the work batches: a deadline in force is checked between
// batches, and a build that runs out of time reports `aborted` instead of a
// usable matrix.
ConflictMatrix conflict_matrix_impl(const std::vector<std::vector<FleetPath>>& candidates,
                                    double delta, int threads, SepCounters& counters,
                                    Clock::time_point deadline, bool* aborted) {
    const int n = static_cast<int>(candidates.size());
    std::vector<int> sizes(n);
    for (int k = 0; k < n; ++k) sizes[k] = static_cast<int>(candidates[k].size());
    ConflictMatrix matrix(sizes);

    std::vector<std::vector<PathGeometry>> geoms(n);
    for (int k = 0; k < n; ++k) {
        geoms[k].reserve(candidates[k].size());
        for (const FleetPath& path : candidates[k]) {
            geoms[k].push_back(make_path_geometry(path));
        }
    }

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }

    std::vector<SepCounters> pair_counters(pairs.size());
    bool out_of_time = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads) shared(out_of_time)
#endif
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (out_of_time) continue;
        if (Clock::now() > deadline) {
            out_of_time = true;
            continue;
        }
        const auto [a, b] = pairs[p];
        auto& blk = matrix.block(a, b);
        for (int g = 0; g < sizes[a]; ++g) {
            for (int h = 0; h < sizes[b]; ++h) {
                const bool separated =
                    geometries_separated(geoms[a][g], geoms[b][h], delta, pair_counters[p]);
                blk[static_cast<std::size_t>(g) * sizes[b] + h] = separated ? 0 : 1;
            }
        }
    }
    if (aborted) *aborted = out_of_time;
    if (!out_of_time) {
        for (const SepCounters& c : pair_counters) counters += c;
    }
    return matrix;
}

}  // namespace

ConflictMatrix build_conflict_matrix(const std::vector<std::vector<FleetPath>>& candidates,
                                     double delta, int threads, SepCounters& counters) {
    return conflict_matrix_impl(candidates, delta, threads, counters, Clock::time_point::max(),
                                nullptr);
}

ConflictMatrix build_conflict_matrix_serial(const std::vector<std::vector<FleetPath>>& candidates,
                                            double delta, SepCounters& counters) {
    return conflict_matrix_impl(candidates, delta, 1, counters, Clock::time_point::max(),
                                nullptr);
}

int resample(TimeQueue& queue, int b, double w) {
    const auto snapshot = queue.entries();
    int added = 0;
    for (std::size_t i = 0; i + 1 < snapshot.size(); ++i) {
        const double gap = snapshot[i + 1].tau - snapshot[i].tau;
        if (gap <= w) continue;
        for (int j = 1; j <= b; ++j) {
            if (queue.insert(snapshot[i].tau + j * gap / (b + 1))) ++added;
        }
    }
    return added;
}

PlanResult plan_fleet(const Scenario& scenario, const PlannerConfig& config) {
    scenario.validate();
    if (!config.valid()) throw InvalidScenario("invalid planner configuration");

    const auto t0 = Clock::now();
    const int threads = resolve_worker_count(config.threads);

    PlanResult result;
    const auto [tau_min, tau_max] = initial_bounds(scenario, config.time_ratio);

    TimeQueue queue;
    queue.insert(tau_min);
    queue.insert(tau_max);

    std::optional<double> best_tau;
    std::vector<FleetPath> best_paths;
    bool saw_full_candidate_set = false;
    PlanStatus stop = PlanStatus::NoProgress;

    bool stopped = false;
    while (!stopped) {
        bool found_this_pass = false;
        // Ascending sweep over currently untested times. The entry list only
        // mutates between passes, so index-walking the snapshot is safe.
        for (std::size_t i = 0; i < queue.entries().size(); ++i) {
            if (queue.entries()[i].tested) continue;
            if (result.iterations_used >= config.max_iterations) {
                stop = PlanStatus::IterationLimit;
                stopped = true;
                break;
            }
            if (seconds_since(t0) > config.timeout) {
                stop = PlanStatus::Timeout;
                stopped = true;
                break;
            }
            const double tau = queue.entries()[i].tau;
            queue.entries()[i].tested = true;
            ++result.iterations_used;

            auto candidates = build_candidates(scenario, tau, threads);
            const bool all_nonempty =
                std::all_of(candidates.begin(), candidates.end(),
                            [](const auto& l) { return !l.empty(); });
            if (!all_nonempty) continue;
            saw_full_candidate_set = true;

            bool aborted = false;
            const auto deadline =
                t0 + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(config.timeout));
            auto matrix = conflict_matrix_impl(candidates, scenario.params.separation, threads,
                                               result.stats, deadline, &aborted);
            if (aborted) {
                stop = PlanStatus::Timeout;
                stopped = true;
                break;
            }
            const auto assignment = solve_assignment(matrix);
            if (!assignment) continue;

            if (!best_tau || tau < *best_tau - kTauDedup) {
                best_tau = tau;
                best_paths.clear();
                for (int k = 0; k < scenario.size(); ++k) {
                    best_paths.push_back(candidates[k][(*assignment)[k]]);
                }
            }
            found_this_pass = true;
            break;  // prune and refine rather than finish the pass
        }
        if (stopped) break;

        if (found_this_pass && best_tau) queue.prune_at_or_above(*best_tau);

        const bool has_untested =
            std::any_of(queue.entries().begin(), queue.entries().end(),
                        [](const TimeQueue::Entry& e) { return !e.tested; });
        if (!has_untested) {
            if (resample(queue, config.resample_count, config.min_width) == 0) {
                stop = saw_full_candidate_set ? PlanStatus::NoProgress : PlanStatus::NoSolution;
                break;
            }
        }
    }

    result.wall_time = seconds_since(t0);
    if (best_tau) {
        result.status = PlanStatus::Solved;
        result.tau = *best_tau;
        result.paths = std::move(best_paths);
    } else {
        result.status = stop;
    }
    return result;
}

}  // namespace dubfleet
