#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dubfleet/scenario_gen.hpp"

namespace dubfleet {

/// Exit codes shared by every subcommand: 0 solved, 1 input or I/O error,
/// 2 planner finished without a solution.
inline constexpr int kExitSolved = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoSolution = 2;

/// Planner configuration used by bench and demo: R = 3, b = 2,
/// w = max(0.1 s, R * tau_min * 1e-4), 300 iterations, 60 s timeout.
PlannerConfig benchmark_config(const Scenario& scenario);

struct PlanOptions {
    std::string scenario_path;
    std::string out_path;       // empty: no result file
    std::string svg_path;       // empty: no rendering
    int threads{0};
    std::optional<double> timeout;
    std::optional<int> max_iterations;
};

int cmd_plan(const PlanOptions& options, std::ostream& out, std::ostream& err);

struct BenchOptions {
    std::vector<ScenarioFamily> families{ScenarioFamily::Formation,
                                         ScenarioFamily::RngToFormation,
                                         ScenarioFamily::FullRng};
    int n_min{3};
    int n_max{8};
    int cases_per_n{50};
    std::uint64_t seed{1};
    std::string out_csv;
    int jobs{1};
    int threads{0};
    std::optional<double> timeout;
    std::optional<int> max_iterations;
};

struct BenchCase {
    ScenarioFamily family;
    int n;
    std::uint64_t seed;
    PlanStatus status;
    double tau;
    double wall_time;
    int iterations;
};

/// Run the Monte-Carlo study; rows come back in deterministic case order
/// regardless of `jobs`.
std::vector<BenchCase> run_bench(const BenchOptions& options);
void write_bench_csv(std::ostream& out, const std::vector<BenchCase>& rows);
void print_bench_summary(std::ostream& out, const std::vector<BenchCase>& rows);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

struct DemoOptions {
    std::string out_dir{"."};
    int threads{0};
};

struct DemoRun {
    Complex wind;
    PlanResult result;
    Scenario scenario;
    std::string svg_path;
};

/// The showcase transition (circle to chevron, 1 km apart) planned twice:
/// without wind and with a 10 m/s wind; each run is rendered to SVG.
std::vector<DemoRun> run_demo(const DemoOptions& options);
int cmd_demo(const DemoOptions& options, std::ostream& out, std::ostream& err);

}  // namespace dubfleet
