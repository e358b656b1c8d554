#include "dubfleet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "dubfleet/io.hpp"
#include "dubfleet/svg.hpp"

namespace dubfleet {

PlannerConfig benchmark_config(const Scenario& scenario) {
    PlannerConfig config;
    config.time_ratio = 3.0;
    config.resample_count = 2;
    config.max_iterations = 300;
    config.timeout = 60.0;
    const auto [tau_min, tau_max] = initial_bounds(scenario, config.time_ratio);
    (void)tau_max;
    config.min_width = std::max(0.1, config.time_ratio * tau_min * 1e-4);
    return config;
}

int cmd_plan(const PlanOptions& options, std::ostream& out, std::ostream& err) {
    ScenarioFile file;
    try {
        file = load_scenario_file(options.scenario_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    file.config.threads = options.threads;
    if (options.timeout) file.config.timeout = *options.timeout;
    if (options.max_iterations) file.config.max_iterations = *options.max_iterations;

    PlanResult result;
    try {
        result = plan_fleet(file.scenario, file.config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    out << "status: " << to_string(result.status) << '\n';
    if (result.status == PlanStatus::Solved) {
        out << "tau: " << result.tau << " s\n";
        for (std::size_t k = 0; k < result.paths.size(); ++k) {
            out << "  aircraft " << k << ": " << to_string(result.paths[k].word) << " radius "
                << result.paths[k].radius << " m, length " << result.paths[k].total_length
                << " m\n";
        }
    }
    out << "iterations: " << result.iterations_used << ", wall time: " << result.wall_time
        << " s\n";

    try {
        if (!options.out_path.empty()) save_result_file(options.out_path, result);
        if (!options.svg_path.empty()) {
            write_paths_svg(options.svg_path, result.paths, file.scenario.params.separation,
                            file.scenario.wind);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return result.status == PlanStatus::Solved ? kExitSolved : kExitNoSolution;
}

std::vector<BenchCase> run_bench(const BenchOptions& options) {
    struct Job {
        ScenarioFamily family;
        int n;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t f = 0; f < options.families.size(); ++f) {
        for (int n = options.n_min; n <= options.n_max; ++n) {
            for (int c = 0; c < options.cases_per_n; ++c) {
                const std::uint64_t stream =
                    (static_cast<std::uint64_t>(f) << 40) |
                    (static_cast<std::uint64_t>(n) << 20) | static_cast<std::uint64_t>(c);
                jobs.push_back({options.families[f], n, split_seed(options.seed, stream)});
            }
        }
    }

    std::vector<BenchCase> rows(jobs.size());
    const int case_threads = options.jobs > 1 ? 1 : options.threads;

    const auto run_case = [&](std::size_t i) {
        const Job& job = jobs[i];
        try {
            VehicleParams params;  // airspeed 15 m/s, radius 40 m, separation 80 m
            Scenario scenario = make_scenario(job.family, job.n, params, job.seed);
            PlannerConfig config = benchmark_config(scenario);
            config.threads = case_threads;
            if (options.timeout) config.timeout = *options.timeout;
            if (options.max_iterations) config.max_iterations = *options.max_iterations;
            const PlanResult result = plan_fleet(scenario, config);
            rows[i] = {job.family, job.n,    job.seed,         result.status,
                       result.tau, result.wall_time, result.iterations_used};
        } catch (const std::exception&) {
            // A case that cannot even be posed counts as a failed case.
            rows[i] = {job.family, job.n, job.seed, PlanStatus::NoSolution, 0.0, 0.0, 0};
        }
    };

    if (options.jobs > 1) {
        // Concurrent cases run with single-threaded planners; the planner's
        // own kernels parallelize only in the sequential-case mode.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(options.jobs)
#endif
        for (std::size_t i = 0; i < jobs.size(); ++i) run_case(i);
    } else {
        for (std::size_t i = 0; i < jobs.size(); ++i) run_case(i);
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchCase>& rows) {
    out << "family,n,seed,status,tau,wall_time_s,iterations\n";
    out << std::setprecision(12);
    for (const BenchCase& row : rows) {
        out << to_string(row.family) << ',' << row.n << ',' << row.seed << ','
            << to_string(row.status) << ',' << row.tau << ',' << row.wall_time << ','
            << row.iterations << '\n';
    }
}

void print_bench_summary(std::ostream& out, const std::vector<BenchCase>& rows) {
    std::map<std::pair<std::string, int>, std::vector<const BenchCase*>> groups;
    for (const BenchCase& row : rows) {
        groups[{to_string(row.family), row.n}].push_back(&row);
    }
    out << "rng: " << SeededRng::algorithm() << "\n";
    out << std::left << std::setw(18) << "family" << std::setw(5) << "n" << std::setw(9)
        << "cases" << std::setw(10) << "success" << std::setw(12) << "t50 [s]" << std::setw(12)
        << "t90 [s]" << '\n';
    for (const auto& [key, cases] : groups) {
        std::vector<double> times;
        int solved = 0;
        for (const BenchCase* c : cases) {
            times.push_back(c->wall_time);
            if (c->status == PlanStatus::Solved) ++solved;
        }
        std::sort(times.begin(), times.end());
        const auto quantile = [&](double q) {
            const std::size_t idx = static_cast<std::size_t>(q * (times.size() - 1));
            return times[idx];
        };
        out << std::left << std::setw(18) << key.first << std::setw(5) << key.second
            << std::setw(9) << cases.size() << std::setw(10)
            << (std::to_string(100.0 * solved / cases.size()) + "%").substr(0, 7)
            << std::setw(12) << quantile(0.5) << std::setw(12) << quantile(0.9) << '\n';
    }
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
    if (options.n_min < 1 || options.n_max < options.n_min || options.cases_per_n < 1) {
        err << "error: invalid fleet-size range or case count\n";
        return kExitInputError;
    }
    const std::vector<BenchCase> rows = run_bench(options);
    if (!options.out_csv.empty()) {
        std::ofstream csv(options.out_csv);
        if (!csv) {
            err << "error: cannot write " << options.out_csv << '\n';
            return kExitInputError;
        }
        write_bench_csv(csv, rows);
    } else {
        write_bench_csv(out, rows);
    }
    print_bench_summary(out, rows);
    return kExitSolved;
}

std::vector<DemoRun> run_demo(const DemoOptions& options) {
    constexpr int kDemoFleet = 5;
    std::filesystem::create_directories(options.out_dir);
    VehicleParams params;

    Scenario base;
    base.params = params;
    base.arrival_offsets.assign(kDemoFleet, 0.0);
    base.starts = make_formation({FormationKind::Circle, kDemoFleet, 120.0, Pose{0.0, 0.0, 0.0}});
    base.ends =
        make_formation({FormationKind::Chevron, kDemoFleet, 120.0, Pose{1000.0, 0.0, 0.0}});

    std::vector<DemoRun> runs;
    for (const Complex wind : {Complex{0.0, 0.0}, Complex{10.0, 0.0}}) {
        Scenario scenario = base;
        scenario.wind = wind;
        PlannerConfig config = benchmark_config(scenario);
        config.threads = options.threads;
        DemoRun run;
        run.wind = wind;
        run.scenario = scenario;
        run.result = plan_fleet(scenario, config);
        std::ostringstream name;
        name << options.out_dir << "/demo_wind" << static_cast<int>(std::abs(wind)) << ".svg";
        run.svg_path = name.str();
        write_paths_svg(run.svg_path, run.result.paths, params.separation, wind);
        runs.push_back(std::move(run));
    }
    return runs;
}

int cmd_demo(const DemoOptions& options, std::ostream& out, std::ostream& err) {
    std::vector<DemoRun> runs;
    try {
        runs = run_demo(options);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    bool all_solved = true;
    for (const DemoRun& run : runs) {
        out << "wind (" << run.wind.real() << ", " << run.wind.imag()
            << ") m/s: " << to_string(run.result.status) << ", tau " << run.result.tau
            << " s -> " << run.svg_path << '\n';
        all_solved = all_solved && run.result.status == PlanStatus::Solved;
    }
    return all_solved ? kExitSolved : kExitNoSolution;
}

}  // namespace dubfleet
