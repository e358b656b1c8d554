// Timing harness for the two parallel kernels (candidate fitting and
// conflict-matrix construction) against their serial references, on a
// formation-transition workload where the matrix dominates.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dubfleet/planner.hpp"
#include "dubfleet/scenario_gen.hpp"

using namespace dubfleet;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_best_of(int repeats, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = Clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return best;
}

}  // namespace

int main() {
    const VehicleParams params{15.0, 40.0, 80.0};
    const Scenario scenario = make_scenario(ScenarioFamily::Formation, 10, params, 20260810);
    const double tau = 1.4 * initial_bounds(scenario, 3.0).first;

#ifdef _OPENMP
    const int hw = omp_get_max_threads();
#else
    const int hw = 1;
#endif
    std::printf("fleet of %d aircraft, tau = %.2f s, %d hardware threads\n", scenario.size(),
                tau, hw);

    const double fit_serial = time_best_of(3, [&] {
        (void)build_candidates_serial(scenario, tau);
    });
    const double fit_parallel = time_best_of(3, [&] {
        (void)build_candidates(scenario, tau, hw);
    });

    const auto candidates = build_candidates_serial(scenario, tau);
    std::size_t total = 0;
    for (const auto& l : candidates) total += l.size();
    std::printf("candidates: %zu paths\n", total);

    SepCounters c_serial, c_parallel;
    const double matrix_serial = time_best_of(3, [&] {
        c_serial = {};
        (void)build_conflict_matrix_serial(candidates, params.separation, c_serial);
    });
    const double matrix_parallel = time_best_of(3, [&] {
        c_parallel = {};
        (void)build_conflict_matrix(candidates, params.separation, hw, c_parallel);
    });

    // The parallel kernels must do exactly the same work.
    const auto serial_matrix = build_conflict_matrix_serial(candidates, params.separation,
                                                            c_serial);
    const auto parallel_matrix = build_conflict_matrix(candidates, params.separation, hw,
                                                       c_parallel);
    bool identical = true;
    for (int a = 0; a < scenario.size(); ++a) {
        for (int b = a + 1; b < scenario.size(); ++b) {
            identical = identical && serial_matrix.block(a, b) == parallel_matrix.block(a, b);
        }
    }

    std::printf("\n%-26s %12s %12s %9s\n", "kernel", "serial [ms]", "parallel [ms]", "speedup");
    std::printf("%-26s %12.2f %12.2f %8.2fx\n", "candidate fitting", fit_serial * 1e3,
                fit_parallel * 1e3, fit_serial / fit_parallel);
    std::printf("%-26s %12.2f %12.2f %8.2fx\n", "conflict matrix", matrix_serial * 1e3,
                matrix_parallel * 1e3, matrix_serial / matrix_parallel);
    std::printf("\npair checks: %lld, temporal solves: %lld, outputs identical: %s\n",
                c_parallel.pair_checks, c_parallel.temporal_solves, identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
