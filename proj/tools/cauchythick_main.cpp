#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cthick/discrete_walk.hpp"
#include "cthick/experiment.hpp"
#include "cthick/green.hpp"
#include "cthick/occupation_stats.hpp"
#include "cthick/verify.hpp"

namespace fs = std::filesystem;
using namespace cthick;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path.string());
    os << content;
}

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::size_t reps = 1;
    std::string out = ".";
    int threads = 1;
    double dt = 1e-4;
    std::vector<double> eps;
    std::vector<double> a;
};

int cmd_simulate(const GlobalOpts& g, double barrier, std::uint64_t max_steps, double start) {
    const fs::path outdir(g.out);
    fs::create_directories(outdir);

    std::vector<CauchyPath> paths(g.reps);
    parallel_for(g.reps, g.threads, [&](std::size_t i) {
        SimConfig cfg;
        cfg.time_step = g.dt;
        cfg.barrier = barrier;
        cfg.max_steps = max_steps;
        cfg.seed = derive_seed(g.seed, i);
        paths[i] = simulate_until_exit(cfg, start);
    });

    std::vector<RunRecord> records;
    records.reserve(g.reps);
    for (std::size_t i = 0; i < g.reps; ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "path_%05zu.csv", i);
        std::ostringstream csv;
        write_path_csv(csv, paths[i]);
        write_text_file(outdir / name, csv.str());

        RunRecord rec;
        rec.seed = derive_seed(g.seed, i);
        rec.dt = g.dt;
        rec.barrier = barrier;
        rec.killed = paths[i].killed;
        rec.exit_time = paths[i].killed ? paths[i].exit_time()
                                        : paths[i].time_at(paths[i].steps());
        rec.file = name;
        records.push_back(std::move(rec));
    }
    write_text_file(outdir / "manifest.json", manifest_json(g.seed, records).dump(2) + "\n");
    std::cout << "wrote " << g.reps << " path file(s) and manifest.json to " << outdir.string()
              << "\n";
    return kExitPass;
}

int cmd_green_table(const GlobalOpts& g, double r, double x0_min, double x0_max, int x0_steps,
                    double x_min, double x_max, int x_steps) {
    const SlitDomain domain{r};
    std::ostringstream os;
    os << "x0,x,G\n";
    for (int i = 0; i < x0_steps; ++i) {
        const double x0 =
            x0_steps == 1 ? x0_min
                          : x0_min + (x0_max - x0_min) * static_cast<double>(i) /
                                static_cast<double>(x0_steps - 1);
        for (int j = 0; j < x_steps; ++j) {
            const double x =
                x_steps == 1 ? x_min
                             : x_min + (x_max - x_min) * static_cast<double>(j) /
                                   static_cast<double>(x_steps - 1);
            os << format_sig17(x0) << ',' << format_sig17(x) << ','
               << format_sig17(green_function(x0, x, domain)) << '\n';
        }
    }
    if (g.out == "-" || g.out.empty()) {
        std::cout << os.str();
    } else {
        const fs::path p(g.out);
        if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
        write_text_file(p, os.str());
        std::cout << "wrote " << (static_cast<long>(x0_steps) * x_steps) << " rows to "
                  << p.string() << "\n";
    }
    return kExitPass;
}

int cmd_green_bounds(double r1, double r3, double c, int k, const std::vector<double>& ts) {
    BoundEnv env{r1, r3, c};
    try {
        env.validate();
    } catch (const std::exception& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return kExitUsage;
    }
    std::ostringstream os;
    os << "quantity,value\n";
    os << "mean_bound," << format_sig17(mean_bound(env)) << '\n';
    os << "moment_bound_k" << k << ',' << format_sig17(moment_bound(env, k)) << '\n';
    for (double t : ts) {
        os << "tail_bound_t" << format_sig17(t) << ','
           << format_sig17(tail_bound(t, env)) << '\n';
    }
    std::cout << os.str();
    return kExitPass;
}

int cmd_spectrum(const GlobalOpts& g, double barrier, std::uint64_t max_steps) {
    std::vector<double> eps = g.eps;
    if (eps.empty()) eps = {1e-2, 3.1622776601683794e-3, 1e-3};
    std::vector<double> as = g.a;
    if (as.empty()) as = {0.2};

    std::vector<std::vector<double>> masses(g.reps);
    parallel_for(g.reps, g.threads, [&](std::size_t i) {
        SimConfig cfg;
        cfg.time_step = g.dt;
        cfg.barrier = barrier;
        cfg.max_steps = max_steps;
        cfg.seed = derive_seed(g.seed, i);
        const CauchyPath path = simulate_until_exit(cfg, 0.0);
        const OccupationProfile profile = build_occupation_profile(path, eps, false, barrier);
        auto& row = masses[i];
        for (double a_level : as) {
            for (double e : eps) row.push_back(thick_point_mass(profile, a_level, e));
        }
    });

    const fs::path outdir(g.out);
    fs::create_directories(outdir);
    ordered_json summaries = ordered_json::array();
    for (std::size_t ai = 0; ai < as.size(); ++ai) {
        std::vector<double> mean_mass(eps.size(), 0.0);
        for (std::size_t e = 0; e < eps.size(); ++e) {
            double s = 0.0;
            for (std::size_t i = 0; i < g.reps; ++i) s += masses[i][ai * eps.size() + e];
            mean_mass[e] = s / static_cast<double>(g.reps);
        }
        std::ostringstream csv;
        csv << "eps,mass\n";
        for (std::size_t e = 0; e < eps.size(); ++e) {
            csv << format_sig17(eps[e]) << ',' << format_sig17(mean_mass[e]) << '\n';
        }
        char name[64];
        std::snprintf(name, sizeof(name), "spectrum_masses_a%zu.csv", ai);
        write_text_file(outdir / name, csv.str());

        try {
            const SpectrumEstimate est = coarse_spectrum(eps, mean_mass, as[ai]);
            summaries.push_back(
                spectrum_summary_json(as[ai], est.slope, g.reps, est.excluded_levels));
        } catch (const std::exception& e) {
            ordered_json j;
            j["a"] = as[ai];
            j["error"] = e.what();
            summaries.push_back(std::move(j));
        }
    }
    write_text_file(outdir / "spectrum_summary.json", summaries.dump(2) + "\n");
    std::cout << "wrote spectrum outputs to " << outdir.string() << "\n";
    return kExitPass;
}

int cmd_excursions(const GlobalOpts& g, double step, double a, int k_max, double start_x,
                   std::uint64_t max_steps) {
    const auto base = ExcursionSchedule::make(a, k_max);
    const fs::path outdir(g.out);
    fs::create_directories(outdir);

    ordered_json lines = ordered_json::array();
    std::vector<ExcursionSchedule> runs(g.reps, base);
    parallel_for(g.reps, g.threads, [&](std::size_t i) {
        PlanarConfig cfg;
        cfg.step = step;
        cfg.max_steps = max_steps;
        cfg.seed = derive_seed(g.seed, i);
        const Vec2 center{0.0, 0.0};
        const PlanarPath path =
            simulate_planar_bm(cfg, Vec2{start_x, 0.0}, ExitDisk{center, 2.0});
        auto& sched = runs[i];
        const std::size_t ci = sched.add_center(center);
        for (int k = 2; k <= k_max; ++k) {
            for (double rho : {0.5, 2.0}) {
                sched.record_count(ci, k, rho,
                                   count_excursions(path, center, sched.scale(k - 1),
                                                    sched.scale(k), rho));
            }
        }
    });
    for (std::size_t i = 0; i < g.reps; ++i) {
        const auto& sched = runs[i];
        const bool perfect = is_n_perfect(sched, 0, k_max);
        for (int k = 2; k <= k_max; ++k) {
            for (double rho : {0.5, 2.0}) {
                lines.push_back(excursion_report_json(Vec2{0.0, 0.0}, k, rho,
                                                      sched.count(0, k, rho),
                                                      sched.target(k), perfect));
            }
        }
    }
    write_text_file(outdir / "excursions.json", lines.dump(2) + "\n");
    std::cout << "wrote excursion report to " << outdir.string() << "\n";
    return kExitPass;
}

int cmd_walk(const GlobalOpts& g, std::int64_t n, bool dump_trajectory) {
    const fs::path outdir(g.out);
    fs::create_directories(outdir);
    const StepSampler sampler;

    std::vector<IntegerWalk> walks(g.reps);
    parallel_for(g.reps, g.threads, [&](std::size_t i) {
        walks[i] = run_walk(n, derive_seed(g.seed, i), sampler);
    });

    ordered_json reports = ordered_json::array();
    for (std::size_t i = 0; i < g.reps; ++i) {
        const std::int64_t tn = max_local_time(walks[i]);
        const double logn = std::log(static_cast<double>(n));
        ordered_json j;
        j["n"] = n;
        j["T_n"] = tn;
        j["T_n_over_log_n_sq"] = static_cast<double>(tn) / (logn * logn);
        j["seed"] = derive_seed(g.seed, i);
        reports.push_back(std::move(j));
        if (dump_trajectory) {
            std::ostringstream csv;
            csv << "i,S\n";
            for (std::size_t t = 0; t < walks[i].positions.size(); ++t) {
                csv << t << ',' << walks[i].positions[t] << '\n';
            }
            char name[64];
            std::snprintf(name, sizeof(name), "walk_%05zu.csv", i);
            write_text_file(outdir / name, csv.str());
        }
    }
    write_text_file(outdir / "walk_report.json", reports.dump(2) + "\n");
    std::cout << "wrote walk report to " << outdir.string() << "\n";
    return kExitPass;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite, std::size_t reps_override,
               bool reps_given) {
    Report report;
    if (suite == "green-mc") {
        GreenMcOptions o;
        o.seed = g.seed;
        o.threads = g.threads;
        if (reps_given) o.n_paths = reps_override;
        report = verify_green_mc(o);
    } else if (suite == "bounds") {
        BoundsOptions o;
        o.seed = g.seed;
        o.threads = g.threads;
        if (reps_given) o.n_paths = reps_override;
        report = verify_bounds(o);
    } else if (suite == "excursions") {
        ExcursionOptions o;
        o.seed = g.seed;
        o.threads = g.threads;
        if (reps_given) {
            o.exc_paths = reps_override;
            o.lt_paths = reps_override;
            o.ilt_paths = reps_override;
        }
        report = verify_excursions(o);
    } else if (suite == "spectrum") {
        SpectrumOptions o;
        o.seed = g.seed;
        o.threads = g.threads;
        if (reps_given) {
            o.sup_paths = reps_override;
            o.spec_paths = reps_override;
        }
        report = verify_spectrum(o);
    } else if (suite == "walk") {
        WalkOptions o;
        o.seed = g.seed;
        o.threads = g.threads;
        report = verify_walk(o);
    } else {
        std::cerr << "unknown verify suite: " << suite
                  << " (expected green-mc|bounds|excursions|spectrum|walk)\n";
        return kExitUsage;
    }

    const std::string text = report.to_string();
    std::cout << text;
    if (!g.out.empty() && g.out != ".") {
        const fs::path p(g.out);
        if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
        write_text_file(p, text);
    }
    return report.pass() ? kExitPass : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cauchy-process thick-point simulation and verification toolkit"};
    app.set_config("--config", "", "plain key=value config file; command-line flags win");
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "base seed; replication i uses derive_seed(seed, i)");
    app.add_option("--reps", g.reps, "replication count");
    app.add_option("--out", g.out, "output directory or file");
    app.add_option("--threads", g.threads, "worker threads (results are thread-count invariant)");
    app.add_option("--dt", g.dt, "time step");
    app.add_option("--eps", g.eps, "epsilon levels (decreasing)");
    app.add_option("--a", g.a, "thick-point levels");

    auto* sim = app.add_subcommand("simulate", "killed Cauchy paths to CSV + JSON manifest");
    double sim_barrier = 1.0, sim_start = 0.0;
    std::uint64_t sim_max_steps = 10'000'000;
    sim->add_option("--barrier", sim_barrier, "kill radius");
    sim->add_option("--start", sim_start, "start point");
    sim->add_option("--max-steps", sim_max_steps, "per-path step budget");

    auto* green = app.add_subcommand("green", "Green-function table / bound evaluators");
    double gr_r = 1.0, gr_x0_min = -0.9, gr_x0_max = 0.9, gr_x_min = -0.9, gr_x_max = 0.9;
    int gr_x0_steps = 101, gr_x_steps = 101;
    double gb_r1 = 0.0, gb_r3 = 0.0, gb_c = 1.0;
    int gb_k = 1;
    std::vector<double> gb_t;
    green->add_option("--r", gr_r, "slit radius");
    green->add_option("--x0-min", gr_x0_min);
    green->add_option("--x0-max", gr_x0_max);
    green->add_option("--x0-steps", gr_x0_steps);
    green->add_option("--x-min", gr_x_min);
    green->add_option("--x-max", gr_x_max);
    green->add_option("--x-steps", gr_x_steps);
    auto* opt_r1 = green->add_option("--r1", gb_r1, "bound evaluator inner radius");
    green->add_option("--r3", gb_r3, "bound evaluator outer radius");
    green->add_option("--c", gb_c, "calibration constant of the bounds");
    green->add_option("--k", gb_k, "moment order");
    green->add_option("--t", gb_t, "tail-bound thresholds");

    auto* spectrum = app.add_subcommand("spectrum", "thick-point masses and coarse spectrum");
    double sp_barrier = 1.0;
    std::uint64_t sp_max_steps = 10'000'000;
    spectrum->add_option("--barrier", sp_barrier);
    spectrum->add_option("--max-steps", sp_max_steps);

    auto* exc = app.add_subcommand("excursions", "excursion counts against the schedule");
    double ex_step = 2e-6, ex_a = 0.3, ex_start = 0.25;
    int ex_kmax = 2;
    std::uint64_t ex_max_steps = 20'000'000;
    exc->add_option("--step", ex_step);
    exc->add_option("--a-param", ex_a, "schedule thickness parameter in (0, 2/pi)");
    exc->add_option("--k-max", ex_kmax);
    exc->add_option("--start", ex_start, "start abscissa on the axis");
    exc->add_option("--max-steps", ex_max_steps);

    auto* walk = app.add_subcommand("walk", "integer Cauchy-tailed walk scaling report");
    std::int64_t wk_n = 100'000;
    bool wk_dump = false;
    walk->add_option("--n", wk_n, "walk length");
    walk->add_flag("--dump-trajectory", wk_dump, "also write trajectory CSV per replication");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "green-mc|bounds|excursions|spectrum|walk")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(g, sim_barrier, sim_max_steps, sim_start);
        if (green->parsed()) {
            if (*opt_r1) return cmd_green_bounds(gb_r1, gb_r3, gb_c, gb_k, gb_t);
            return cmd_green_table(g, gr_r, gr_x0_min, gr_x0_max, gr_x0_steps, gr_x_min,
                                   gr_x_max, gr_x_steps);
        }
        if (spectrum->parsed()) return cmd_spectrum(g, sp_barrier, sp_max_steps);
        if (exc->parsed()) return cmd_excursions(g, ex_step, ex_a, ex_kmax, ex_start, ex_max_steps);
        if (walk->parsed()) return cmd_walk(g, wk_n, wk_dump);
        if (verify->parsed()) {
            const bool reps_given = app.count("--reps") > 0;
            return cmd_verify(g, suite, g.reps, reps_given);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
