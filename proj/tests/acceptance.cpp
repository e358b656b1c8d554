// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.
//
//   ./acceptance            run all criteria
//   ./acceptance 1 4 7      run a subset (for development)
//
// Stated runtime budgets assume a 4-core laptop; on narrower machines they
// are scaled by 4 / hardware_threads and the scaling is printed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dubfleet/cli.hpp"
#include "dubfleet/length_fit.hpp"
#include "dubfleet/scenario_gen.hpp"
#include "oracles.hpp"

using namespace dubfleet;

namespace {

int g_passed = 0;
int g_failed = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double budget_scale() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return hw >= 4 ? 1.0 : 4.0 / hw;
}

void report(int criterion, const char* title, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", criterion, title,
                detail.c_str());
    std::fflush(stdout);
    (ok ? g_passed : g_failed) += 1;
}

Pose random_pose(std::mt19937_64& gen, double span) {
    const auto u = [&] { return (gen() >> 11) * 0x1.0p-53; };
    return {span * u(), span * u(), kTwoPi * u() - kPi};
}

const VehicleParams kParams{15.0, 40.0, 80.0};

// 64-bit FNV-1a over raw double bits, used for the determinism digests.
struct Digest {
    std::uint64_t h{14695981039346656037ULL};
    void add_bits(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    }
    void add(double d) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, sizeof(bits));
        add_bits(bits);
    }
    void add(std::int64_t v) { add_bits(static_cast<std::uint64_t>(v)); }
};

// ---------------------------------------------------------------------------
// Criterion 1: Dubins correctness.

struct Crit1Out {
    bool ok{true};
    double elapsed{0.0};
    double max_pos_err{0.0};
    double max_heading_err{0.0};
    Digest digest;
};

Crit1Out run_criterion1() {
    constexpr int kCases = 1000;
    std::mt19937_64 gen(101);
    std::vector<std::pair<Pose, Pose>> cases(kCases);
    for (auto& [s, e] : cases) {
        s = random_pose(gen, 1000.0);
        e = random_pose(gen, 1000.0);
    }

    Crit1Out out;
    std::vector<double> lengths(kCases);
    std::vector<double> pos_errs(kCases);
    std::vector<double> heading_errs(kCases);
    std::vector<char> mins_match(kCases, 0);

    const auto t0 = Clock::now();
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < kCases; ++i) {
        const auto& [s, e] = cases[i];
        const auto [tau, path] = shortest_dubins(s, e, kParams);
        double best = std::numeric_limits<double>::infinity();
        for (int w = 0; w < kBasicWordCount; ++w) {
            const auto c = build_word({static_cast<WordTag>(w), Extension::None}, s, e,
                                      kParams.min_turn_radius, kParams.speed);
            if (c) best = std::min(best, c->total_length);
        }
        mins_match[i] = path.total_length == best ? 1 : 0;
        lengths[i] = path.total_length;
        const Pose reached = oracle::integrate_dynamics(path, 0.02);
        pos_errs[i] = std::hypot(reached.x - e.x, reached.y - e.y);
        heading_errs[i] = std::abs(normalize_angle(reached.theta - e.theta));
    }
    out.elapsed = seconds_since(t0);

    for (int i = 0; i < kCases; ++i) {
        out.ok = out.ok && mins_match[i] && pos_errs[i] <= 1e-5 && heading_errs[i] <= 1e-6;
        out.max_pos_err = std::max(out.max_pos_err, pos_errs[i]);
        out.max_heading_err = std::max(out.max_heading_err, heading_errs[i]);
        out.digest.add(lengths[i]);
    }
    return out;
}

void criterion1() {
    const auto out = run_criterion1();
    const double budget = 1.0 * budget_scale();
    std::ostringstream detail;
    detail << "1000 pose pairs, max endpoint error " << out.max_pos_err << " m / "
           << out.max_heading_err << " rad, " << out.elapsed << " s (budget " << budget << " s)";
    report(1, "Dubins correctness", out.ok && out.elapsed < budget, detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 2: length-fit accuracy.

struct Crit2Out {
    bool ok{true};
    double elapsed{0.0};
    double max_err{0.0};
    long paths_checked{0};
    Digest digest;
};

Crit2Out run_criterion2() {
    constexpr int kCases = 500;
    std::mt19937_64 gen(202);
    struct Case {
        Pose s, e;
        double tau;
    };
    std::vector<Case> cases;
    cases.reserve(kCases);
    while (static_cast<int>(cases.size()) < kCases) {
        const Pose s = random_pose(gen, 1000.0);
        const Pose e = random_pose(gen, 1000.0);
        const double shortest = shortest_dubins(s, e, kParams).tau;
        if (shortest <= 0.0) continue;
        const double factor = 1.0 + 2.0 * ((gen() >> 11) * 0x1.0p-53);
        cases.push_back({s, e, factor * shortest});
    }

    Crit2Out out;
    std::vector<double> max_errs(kCases, 0.0);
    std::vector<long> counts(kCases, 0);
    std::vector<Digest> digests(kCases);

    const auto t0 = Clock::now();
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < kCases; ++i) {
        const auto& c = cases[i];
        const auto set = fit_dubins(c.s, c.e, kParams, c.tau);
        const double target = c.tau * kParams.speed;
        for (const FleetPath& path : set) {
            const double measured = oracle::quadrature_length(path);
            max_errs[i] = std::max(max_errs[i], std::abs(measured - target));
            ++counts[i];
            digests[i].add(path.total_length);
        }
    }
    out.elapsed = seconds_since(t0);

    for (int i = 0; i < kCases; ++i) {
        const double tol = std::max(1e-6, 1e-9 * cases[i].tau * kParams.speed);
        out.ok = out.ok && max_errs[i] <= tol;
        out.max_err = std::max(out.max_err, max_errs[i]);
        out.paths_checked += counts[i];
        out.digest.add(static_cast<std::int64_t>(counts[i]));
        out.digest.add_bits(digests[i].h);
    }
    return out;
}

void criterion2() {
    const auto out = run_criterion2();
    const double budget = 5.0 * budget_scale();
    std::ostringstream detail;
    detail << out.paths_checked << " fitted paths over 500 instances, max quadrature deviation "
           << out.max_err << " m, " << out.elapsed << " s (budget " << budget << " s)";
    report(2, "length-fit accuracy", out.ok && out.elapsed < budget, detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 3: separation oracle equivalence.

struct Crit3Out {
    bool ok{true};
    double elapsed{0.0};
    int pairs{0};
    int conflicts{0};
    int band_cases{0};
    int clear_disagreements{0};
    int unsafe_band_cases{0};
    Digest digest;
};

Crit3Out run_criterion3() {
    constexpr int kPairs = 500;
    std::mt19937_64 gen(303);
    struct PairCase {
        FleetPath a, b;
    };
    std::vector<PairCase> cases;
    cases.reserve(kPairs);
    while (static_cast<int>(cases.size()) < kPairs) {
        // A compact area keeps a healthy mix of conflicting and clear pairs.
        const Pose sa = random_pose(gen, 500.0);
        const Pose ea = random_pose(gen, 500.0);
        const Pose sb = random_pose(gen, 500.0);
        const Pose eb = random_pose(gen, 500.0);
        const double tau = 1.25 * std::max(shortest_dubins(sa, ea, kParams).tau,
                                           shortest_dubins(sb, eb, kParams).tau);
        if (tau <= 0.0) continue;
        const auto la = fit_dubins(sa, ea, kParams, tau);
        const auto lb = fit_dubins(sb, eb, kParams, tau);
        if (la.empty() || lb.empty()) continue;
        cases.push_back({la[gen() % la.size()], lb[gen() % lb.size()]});
    }

    Crit3Out out;
    out.pairs = kPairs;
    const double delta = kParams.separation;
    std::vector<int> verdicts(kPairs, 0);  // 1 ok-agree, 2 ok-band, 3 clear fail, 4 unsafe band
    std::vector<char> decisions(kPairs, 0);

    const auto t0 = Clock::now();
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < kPairs; ++i) {
        const auto& pc = cases[i];
        const bool separated = is_pair_separated(pc.a, pc.b, delta);
        const double oracle_min = oracle::dense_min_distance(pc.a, pc.b, 1e-4);
        decisions[i] = separated ? 1 : 0;
        if (std::abs(oracle_min - delta) > 1e-3) {
            verdicts[i] = separated == (oracle_min > delta) ? 1 : 3;
        } else if (separated && oracle_min <= delta) {
            verdicts[i] = 4;  // claimed separated against the oracle inside the band
        } else {
            verdicts[i] = 2;
        }
    }
    out.elapsed = seconds_since(t0);

    for (int i = 0; i < kPairs; ++i) {
        if (decisions[i] == 0) ++out.conflicts;
        if (verdicts[i] == 2 || verdicts[i] == 4) ++out.band_cases;
        if (verdicts[i] == 3) ++out.clear_disagreements;
        if (verdicts[i] == 4) ++out.unsafe_band_cases;
        out.digest.add(static_cast<std::int64_t>(decisions[i]));
    }
    out.ok = out.clear_disagreements == 0 && out.unsafe_band_cases == 0;
    return out;
}

void criterion3() {
    const auto out = run_criterion3();
    const double budget = 30.0 * budget_scale();
    std::ostringstream detail;
    detail << out.pairs << " fitted pairs (" << out.conflicts << " conflicting, "
           << out.pairs - out.conflicts << " clear), " << out.clear_disagreements
           << " disagreements outside the 1e-3 band, " << out.unsafe_band_cases
           << " non-conservative in-band calls, " << out.band_cases << " band cases, "
           << out.elapsed << " s (budget " << budget << " s)";
    report(3, "separation oracle equivalence", out.ok && out.elapsed < budget, detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 4: assignment feasibility equals brute force.

struct Crit4Out {
    bool ok{true};
    int feasible{0};
    Digest digest;
};

Crit4Out run_criterion4() {
    std::mt19937_64 gen(404);
    Crit4Out out;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 5);
        std::vector<int> sizes(n);
        for (int& s : sizes) s = 1 + static_cast<int>(gen() % 6);
        ConflictMatrix m(sizes);
        const double density = 0.05 + 0.9 * (trial / 199.0);
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                for (int g = 0; g < sizes[a]; ++g) {
                    for (int h = 0; h < sizes[b]; ++h) {
                        m.set(a, b, g, h, (gen() >> 11) * 0x1.0p-53 < density);
                    }
                }
            }
        }
        const auto pick = solve_assignment(m);
        const bool brute = oracle::brute_force_feasible(m);
        out.ok = out.ok && pick.has_value() == brute;
        if (pick) {
            ++out.feasible;
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    out.ok = out.ok && !m.conflict(a, b, (*pick)[a], (*pick)[b]);
                }
                out.digest.add(static_cast<std::int64_t>((*pick)[a]));
            }
        }
        out.digest.add(static_cast<std::int64_t>(pick.has_value()));
    }
    return out;
}

void criterion4() {
    const auto out = run_criterion4();
    std::ostringstream detail;
    detail << "200 instances (N <= 6, sizes <= 6), " << out.feasible
           << " feasible, decisions match brute force";
    report(4, "assignment equals brute force", out.ok, detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 5 (+6): scaled Monte-Carlo study.

struct Crit5Out {
    bool rates_ok{true};
    bool smoke_ok{true};
    double elapsed{0.0};
    std::vector<BenchCase> rows;
    std::vector<BenchCase> smoke_rows;
    std::string rate_table;
    Digest digest;
};

Crit5Out run_criterion5(int threads) {
    Crit5Out out;
    const auto t0 = Clock::now();

    BenchOptions options;
    options.n_min = 3;
    options.n_max = 8;
    options.cases_per_n = 50;
    options.seed = 505;
    options.threads = threads;
    out.rows = run_bench(options);

    BenchOptions smoke;
    smoke.families = {ScenarioFamily::RngToFormation};
    smoke.n_min = 12;
    smoke.n_max = 12;
    smoke.cases_per_n = 10;
    smoke.seed = 512;
    smoke.threads = threads;
    out.smoke_rows = run_bench(smoke);

    out.elapsed = seconds_since(t0);

    std::map<std::pair<std::string, int>, std::pair<int, int>> rates;
    for (const BenchCase& row : out.rows) {
        auto& [solved, total] = rates[{to_string(row.family), row.n}];
        total += 1;
        if (row.status == PlanStatus::Solved) solved += 1;
        out.digest.add(static_cast<std::int64_t>(row.status == PlanStatus::Solved));
        out.digest.add(row.tau);
        out.digest.add(static_cast<std::int64_t>(row.iterations));
    }
    std::ostringstream table;
    for (const auto& [key, counts] : rates) {
        if (counts.first != counts.second) {
            out.rates_ok = false;
            table << ' ' << key.first << "/n=" << key.second << ':' << counts.first << '/'
                  << counts.second;
        }
    }
    out.rate_table = table.str();

    int smoke_solved = 0;
    for (const BenchCase& row : out.smoke_rows) {
        if (row.status == PlanStatus::Solved) ++smoke_solved;
        out.digest.add(static_cast<std::int64_t>(row.status == PlanStatus::Solved));
        out.digest.add(row.tau);
        out.digest.add(static_cast<std::int64_t>(row.iterations));
    }
    out.smoke_ok = smoke_solved >= 9;  // >= 90% of 10 cases
    return out;
}

std::optional<Crit5Out> g_crit5;  // reused by criteria 6 and 8

void criterion5() {
    g_crit5 = run_criterion5(8);
    const Crit5Out& out = *g_crit5;
    const double budget = 900.0 * budget_scale();
    std::ostringstream detail;
    detail << out.rows.size() << " cases n=3..8 across 3 families";
    if (out.rates_ok) {
        detail << ", success 100%";
    } else {
        detail << ", rate misses:" << out.rate_table;
    }
    int smoke_solved = 0;
    for (const auto& row : out.smoke_rows) {
        if (row.status == PlanStatus::Solved) ++smoke_solved;
    }
    detail << "; n=12 smoke " << smoke_solved << "/10; " << out.elapsed << " s (budget "
           << budget << " s)";
    report(5, "scaled Monte-Carlo success", out.rates_ok && out.smoke_ok && out.elapsed < budget,
           detail.str());
}

void criterion6() {
    if (!g_crit5) g_crit5 = run_criterion5(8);
    const auto median_at8 = [&](ScenarioFamily family) {
        std::vector<double> times;
        for (const BenchCase& row : g_crit5->rows) {
            if (row.family == family && row.n == 8) times.push_back(row.wall_time);
        }
        std::sort(times.begin(), times.end());
        return times.empty() ? 0.0 : times[times.size() / 2];
    };
    const double formation = median_at8(ScenarioFamily::Formation);
    const double rng2f = median_at8(ScenarioFamily::RngToFormation);
    const double fullrng = median_at8(ScenarioFamily::FullRng);
    const bool ok = formation >= rng2f && rng2f >= fullrng;
    std::ostringstream detail;
    detail << "median wall time at n=8: formation " << formation << " s >= rng_to_formation "
           << rng2f << " s >= full_rng " << fullrng << " s";
    report(6, "runtime ordering across families", ok, detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 7: wind demo validity.

void criterion7() {
    const std::string dir = "acceptance_demo_out";
    std::filesystem::create_directories(dir);
    DemoOptions options;
    options.out_dir = dir;
    const auto runs = run_demo(options);

    bool ok = runs.size() == 2;
    std::ostringstream detail;
    for (const DemoRun& run : runs) {
        const bool windy = std::abs(run.wind) > 0.0;
        if (run.result.status != PlanStatus::Solved) {
            ok = false;
            detail << (windy ? " wind" : " calm") << " run unsolved;";
            continue;
        }
        double max_end_err = 0.0;
        for (int k = 0; k < run.scenario.size(); ++k) {
            const FleetPath& path = run.result.paths[k];
            const Complex ground_end =
                path.eval(path.duration()).position() + run.wind * path.duration();
            max_end_err = std::max(max_end_err,
                                   std::abs(ground_end - run.scenario.ends[k].position()));
        }
        // Air-frame separation certified by the library; ground-frame
        // re-checked by dense sampling (the uniform drift cancels, both must
        // agree).
        double min_air = std::numeric_limits<double>::infinity();
        double min_ground = min_air;
        const auto& paths = run.result.paths;
        for (std::size_t a = 0; a < paths.size(); ++a) {
            for (std::size_t b = a + 1; b < paths.size(); ++b) {
                min_air = std::min(min_air, oracle::dense_min_distance(paths[a], paths[b], 1e-3));
                const double tau = std::min(paths[a].duration(), paths[b].duration());
                double mg = std::numeric_limits<double>::infinity();
                for (double t = 0.0; t <= tau; t += 1e-3) {
                    const Complex pa = paths[a].eval(t).position() + run.wind * t;
                    const Complex pb = paths[b].eval(t).position() + run.wind * t;
                    mg = std::min(mg, std::abs(pa - pb));
                }
                min_ground = std::min(min_ground, mg);
            }
        }
        const bool run_ok = max_end_err <= 1e-3 && min_air > kParams.separation &&
                            min_ground > kParams.separation;
        ok = ok && run_ok;
        detail << (windy ? " wind(10,0):" : " calm:") << " end err " << max_end_err
               << " m, min sep air " << min_air << " / ground " << min_ground << " m;";
    }
    report(7, "wind demo validity", ok, detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 8: determinism across worker counts.

void criterion8() {
    if (!g_crit5) g_crit5 = run_criterion5(8);

    bool ok = true;
    std::ostringstream detail;

    const auto compare = [&](const char* name, std::uint64_t a, std::uint64_t b) {
        const bool same = a == b;
        ok = ok && same;
        detail << ' ' << name << (same ? " ok," : " MISMATCH,");
    };

    // Criteria 1-4 digests at 1 and 8 workers. Their kernels take the worker
    // count from OpenMP's current setting, so pin it around each run.
    const auto with_threads = [&](int count, auto&& fn) {
#ifdef _OPENMP
        const int old = omp_get_max_threads();
        omp_set_num_threads(count);
        auto result = fn();
        omp_set_num_threads(old);
        return result;
#else
        (void)count;
        return fn();
#endif
    };

    compare("dubins",
            with_threads(1, [] { return run_criterion1().digest.h; }),
            with_threads(8, [] { return run_criterion1().digest.h; }));
    compare("fit",
            with_threads(1, [] { return run_criterion2().digest.h; }),
            with_threads(8, [] { return run_criterion2().digest.h; }));
    compare("separation",
            with_threads(1, [] { return run_criterion3().digest.h; }),
            with_threads(8, [] { return run_criterion3().digest.h; }));
    compare("assignment",
            with_threads(1, [] { return run_criterion4().digest.h; }),
            with_threads(8, [] { return run_criterion4().digest.h; }));

    // Criterion 5 reruns with 1 worker against the stored 8-worker digests.
    const Crit5Out serial = run_criterion5(1);
    compare("monte-carlo", serial.digest.h, g_crit5->digest.h);

    report(8, "determinism across worker counts", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    const auto wanted = [&](int c) { return selected.empty() || selected.count(c) > 0; };

    std::printf("acceptance suite (hardware threads: %u, budget scale: %.2f)\n",
                std::thread::hardware_concurrency(), budget_scale());

    if (wanted(1)) criterion1();
    if (wanted(2)) criterion2();
    if (wanted(3)) criterion3();
    if (wanted(4)) criterion4();
    if (wanted(5)) criterion5();
    if (wanted(6)) criterion6();
    if (wanted(7)) criterion7();
    if (wanted(8)) criterion8();

    std::printf("%d passed, %d failed\n", g_passed, g_failed);
    return g_failed;
}
