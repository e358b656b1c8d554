#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dubfleet/cli.hpp"

namespace {

dubfleet::ScenarioFamily family_from_name(const std::string& name) {
    if (name == "formation") return dubfleet::ScenarioFamily::Formation;
    if (name == "rng_to_formation") return dubfleet::ScenarioFamily::RngToFormation;
    if (name == "full_rng") return dubfleet::ScenarioFamily::FullRng;
    throw CLI::ValidationError("family", "unknown family: " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Synchronized conflict-free path planning for fleets of fixed-wing aircraft.\n"
        "Scenario and result files are JSON (angles in radians, distances in meters,\n"
        "times in seconds); benchmark output is CSV. The DUBINS_FLEET_THREADS\n"
        "environment variable caps the worker pool of every command."};
    app.require_subcommand(1);

    // plan
    dubfleet::PlanOptions plan_options;
    double plan_timeout = -1.0;
    int plan_max_iters = -1;
    auto* plan = app.add_subcommand("plan", "Plan one scenario from a JSON file");
    plan->add_option("scenario", plan_options.scenario_path, "Scenario JSON file")->required();
    plan->add_option("--out", plan_options.out_path, "Write the result JSON here");
    plan->add_option("--svg", plan_options.svg_path, "Render the planned paths to SVG");
    plan->add_option("--timeout", plan_timeout, "Override the planner timeout [s]");
    plan->add_option("--max-iters", plan_max_iters, "Override the iteration limit");
    plan->add_option("--threads", plan_options.threads, "Worker threads (0 = all)");

    // bench
    dubfleet::BenchOptions bench_options;
    std::string bench_family = "all";
    double bench_timeout = -1.0;
    int bench_max_iters = -1;
    auto* bench = app.add_subcommand("bench", "Monte-Carlo benchmark over seeded scenarios");
    bench->add_option("--family", bench_family,
                      "formation, rng_to_formation, full_rng or all");
    bench->add_option("--n-min", bench_options.n_min, "Smallest fleet size");
    bench->add_option("--n-max", bench_options.n_max, "Largest fleet size");
    bench->add_option("--cases", bench_options.cases_per_n, "Cases per fleet size per family");
    bench->add_option("--seed", bench_options.seed, "Master seed");
    bench->add_option("--out", bench_options.out_csv, "Write CSV rows here (default: stdout)");
    bench->add_option("--jobs", bench_options.jobs, "Concurrent benchmark cases");
    bench->add_option("--timeout", bench_timeout, "Per-case timeout [s] (default 60)");
    bench->add_option("--max-iters", bench_max_iters, "Per-case iteration limit (default 300)");
    bench->add_option("--threads", bench_options.threads, "Worker threads per case (0 = all)");

    // demo
    dubfleet::DemoOptions demo_options;
    auto* demo = app.add_subcommand(
        "demo", "Circle-to-chevron transition rendered without and with 10 m/s wind");
    demo->add_option("--out", demo_options.out_dir, "Output directory for the SVG files");
    demo->add_option("--threads", demo_options.threads, "Worker threads (0 = all)");

    CLI11_PARSE(app, argc, argv);

    if (plan->parsed()) {
        if (plan_timeout > 0.0) plan_options.timeout = plan_timeout;
        if (plan_max_iters > 0) plan_options.max_iterations = plan_max_iters;
        return dubfleet::cmd_plan(plan_options, std::cout, std::cerr);
    }
    if (bench->parsed()) {
        if (bench_family != "all") {
            try {
                bench_options.families = {family_from_name(bench_family)};
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << '\n';
                return dubfleet::kExitInputError;
            }
        }
        if (bench_timeout > 0.0) bench_options.timeout = bench_timeout;
        if (bench_max_iters > 0) bench_options.max_iterations = bench_max_iters;
        return dubfleet::cmd_bench(bench_options, std::cout, std::cerr);
    }
    return dubfleet::cmd_demo(demo_options, std::cout, std::cerr);
}
