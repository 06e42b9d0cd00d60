#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cthick/discrete_walk.hpp"
#include "cthick/experiment.hpp"
#include "cthick/green.hpp"
#include "cthick/occupation_stats.hpp"
#include "cthick/verify.hpp"

namespace py = pybind11;
using namespace cthick;

namespace {

SimConfig make_sim_config(double time_step, double barrier, std::uint64_t max_steps,
                          std::uint64_t seed) {
    SimConfig cfg;
    cfg.time_step = time_step;
    cfg.barrier = barrier;
    cfg.max_steps = max_steps;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

Report run_verify_suite(const std::string& suite, std::uint64_t seed, int threads,
                        std::size_t reps) {
    if (suite == "green-mc") {
        GreenMcOptions o;
        o.seed = seed;
        o.threads = threads;
        if (reps > 0) o.n_paths = reps;
        return verify_green_mc(o);
    }
    if (suite == "bounds") {
        BoundsOptions o;
        o.seed = seed;
        o.threads = threads;
        if (reps > 0) o.n_paths = reps;
        return verify_bounds(o);
    }
    if (suite == "excursions") {
        ExcursionOptions o;
        o.seed = seed;
        o.threads = threads;
        if (reps > 0) {
            o.exc_paths = reps;
            o.lt_paths = reps;
            o.ilt_paths = reps;
        }
        return verify_excursions(o);
    }
    if (suite == "spectrum") {
        SpectrumOptions o;
        o.seed = seed;
        o.threads = threads;
        if (reps > 0) {
            o.sup_paths = reps;
            o.spec_paths = reps;
        }
        return verify_spectrum(o);
    }
    if (suite == "walk") {
        WalkOptions o;
        o.seed = seed;
        o.threads = threads;
        return verify_walk(o);
    }
    throw std::invalid_argument("unknown verify suite: " + suite);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Killed Cauchy paths, slit-domain Green function, occupation and "
              "excursion statistics";

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform01", &Rng::uniform01);

    m.def("cauchy_quantile", &cauchy_quantile, py::arg("u"), py::arg("scale"));
    m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("index"));
    m.def("sample_cauchy_increment", &sample_cauchy_increment, py::arg("scale"),
          py::arg("rng"));

    py::class_<CauchyPath>(m, "CauchyPath")
        .def_readonly("time_step", &CauchyPath::time_step)
        .def_readonly("positions", &CauchyPath::positions)
        .def_readonly("killed", &CauchyPath::killed)
        .def_property_readonly("exit_index",
                               [](const CauchyPath& p) -> py::object {
                                   if (p.exit_index) return py::cast(*p.exit_index);
                                   return py::none();
                               })
        .def("exit_time",
             [](const CauchyPath& p) -> py::object {
                 if (p.killed) return py::cast(p.exit_time());
                 return py::none();
             })
        .def("__len__", [](const CauchyPath& p) { return p.positions.size(); });

    m.def(
        "simulate_until_exit",
        [](double start, double dt, double barrier, std::uint64_t max_steps,
           std::uint64_t seed) {
            return simulate_until_exit(make_sim_config(dt, barrier, max_steps, seed), start);
        },
        py::arg("start") = 0.0, py::arg("dt") = 1e-4, py::arg("barrier") = 1.0,
        py::arg("max_steps") = 10'000'000, py::arg("seed") = 0);
    m.def("occupation_measure", &occupation_measure, py::arg("path"), py::arg("center"),
          py::arg("radius"));

    m.def("conformal_h", py::overload_cast<double>(&conformal_h), py::arg("x"));
    m.def("conformal_h_complex", py::overload_cast<std::complex<double>>(&conformal_h),
          py::arg("z"));
    m.def(
        "green_function",
        [](double x0, double x, double r) { return green_function(x0, x, SlitDomain{r}); },
        py::arg("x0"), py::arg("x"), py::arg("r") = 1.0);
    m.def(
        "green_complex",
        [](std::complex<double> z0, std::complex<double> z, double r) {
            return green_complex(z0, z, SlitDomain{r});
        },
        py::arg("z0"), py::arg("z"), py::arg("r") = 1.0);
    m.def(
        "expected_occupation",
        [](double x0, double center, double radius, double r, double abs_tol) {
            return expected_occupation(x0, center, radius, SlitDomain{r}, abs_tol);
        },
        py::arg("x0"), py::arg("center"), py::arg("radius"), py::arg("r") = 1.0,
        py::arg("abs_tol") = 1e-8);
    m.def(
        "mean_bound",
        [](double r1, double r3, double c) { return mean_bound(BoundEnv{r1, r3, c}); },
        py::arg("r1"), py::arg("r3"), py::arg("c"));
    m.def(
        "moment_bound",
        [](double r1, double r3, double c, int k) {
            return moment_bound(BoundEnv{r1, r3, c}, k);
        },
        py::arg("r1"), py::arg("r3"), py::arg("c"), py::arg("k"));
    m.def(
        "tail_bound",
        [](double t, double r1, double r3, double c) {
            return tail_bound(t, BoundEnv{r1, r3, c});
        },
        py::arg("t"), py::arg("r1"), py::arg("r3"), py::arg("c"));

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y);

    py::class_<PlanarPath>(m, "PlanarPath")
        .def_readonly("step", &PlanarPath::step)
        .def_readonly("band_halfwidth", &PlanarPath::band_halfwidth)
        .def_readonly("stopped", &PlanarPath::stopped)
        .def_property_readonly("stop_index",
                               [](const PlanarPath& p) -> py::object {
                                   if (p.stop_index) return py::cast(*p.stop_index);
                                   return py::none();
                               })
        .def("__len__", [](const PlanarPath& p) { return p.points.size(); })
        .def("point", [](const PlanarPath& p, std::size_t i) {
            return std::pair<double, double>(p.points.at(i).x, p.points.at(i).y);
        });

    py::class_<LocalTimeTrace>(m, "LocalTimeTrace")
        .def_readonly("values", &LocalTimeTrace::values);

    py::class_<EmbeddedPath>(m, "EmbeddedPath")
        .def_readonly("levels", &EmbeddedPath::levels)
        .def_readonly("positions", &EmbeddedPath::positions)
        .def_readonly("truncated", &EmbeddedPath::truncated);

    m.def(
        "simulate_planar_bm",
        [](std::pair<double, double> start, double step, std::uint64_t max_steps,
           std::uint64_t seed, double band_halfwidth, const std::string& stop,
           std::pair<double, double> center, double radius, double barrier) {
            PlanarConfig cfg;
            cfg.step = step;
            cfg.max_steps = max_steps;
            cfg.seed = seed;
            cfg.band_halfwidth = band_halfwidth;
            StopRule rule = NoStop{};
            if (stop == "disk") {
                rule = ExitDisk{Vec2{center.first, center.second}, radius};
            } else if (stop == "axis") {
                rule = AxisExit{barrier};
            } else if (stop != "none") {
                throw std::invalid_argument("stop must be one of disk|axis|none");
            }
            return simulate_planar_bm(cfg, Vec2{start.first, start.second}, rule);
        },
        py::arg("start") = std::pair<double, double>(0.0, 0.0), py::arg("step") = 1e-4,
        py::arg("max_steps") = 1'000'000, py::arg("seed") = 0,
        py::arg("band_halfwidth") = 0.0, py::arg("stop") = "none",
        py::arg("center") = std::pair<double, double>(0.0, 0.0), py::arg("radius") = 1.0,
        py::arg("barrier") = 1.0);

    m.def("local_time_trace",
          py::overload_cast<const PlanarPath&>(&local_time_trace), py::arg("path"));
    m.def("local_time_trace_with_band",
          py::overload_cast<const PlanarPath&, double>(&local_time_trace), py::arg("path"),
          py::arg("band_halfwidth"));
    m.def(
        "embedded_cauchy",
        [](const PlanarPath& path, const LocalTimeTrace& trace,
           const std::vector<double>& levels) {
            return embedded_cauchy(path, trace, levels);
        },
        py::arg("path"), py::arg("trace"), py::arg("levels"));
    m.def(
        "intersection_local_time",
        [](const PlanarPath& path, const LocalTimeTrace& trace,
           std::pair<double, double> center, double radius, std::size_t upto) {
            return intersection_local_time(path, trace, Vec2{center.first, center.second},
                                           radius, upto);
        },
        py::arg("path"), py::arg("trace"), py::arg("center"), py::arg("radius"),
        py::arg("upto"));
    m.def(
        "count_excursions",
        [](const PlanarPath& path, std::pair<double, double> center, double eps_outer,
           double eps_inner, double rho) {
            return count_excursions(path, Vec2{center.first, center.second}, eps_outer,
                                    eps_inner, rho);
        },
        py::arg("path"), py::arg("center"), py::arg("eps_outer"), py::arg("eps_inner"),
        py::arg("rho"));

    py::class_<ExcursionSchedule>(m, "ExcursionSchedule")
        .def_static("make", &ExcursionSchedule::make, py::arg("a"), py::arg("k_max"),
                    py::arg("epsilon1") = 0.125)
        .def_property_readonly("a", &ExcursionSchedule::a)
        .def_property_readonly("k_max", &ExcursionSchedule::k_max)
        .def("scale", &ExcursionSchedule::scale, py::arg("k"))
        .def("target", &ExcursionSchedule::target, py::arg("k"))
        .def(
            "add_center",
            [](ExcursionSchedule& s, std::pair<double, double> x) {
                return s.add_center(Vec2{x.first, x.second});
            },
            py::arg("x"))
        .def("record_count", &ExcursionSchedule::record_count, py::arg("center_index"),
             py::arg("k"), py::arg("rho"), py::arg("count"))
        .def("count", &ExcursionSchedule::count, py::arg("center_index"), py::arg("k"),
             py::arg("rho"));
    m.def("is_n_perfect", &is_n_perfect, py::arg("schedule"), py::arg("center_index"),
          py::arg("n"), py::arg("rho_lo") = 0.5, py::arg("rho_hi") = 2.0);

    m.def("normalizer", &normalizer, py::arg("eps"));
    m.def("geometric_eps_sequence", &geometric_eps_sequence, py::arg("delta"),
          py::arg("eps0"), py::arg("n"));

    py::class_<OccupationProfile>(m, "OccupationProfile")
        .def_readonly("epsilons", &OccupationProfile::epsilons)
        .def_readonly("centers", &OccupationProfile::centers)
        .def_readonly("grid_count", &OccupationProfile::grid_count)
        .def_readonly("grid_spacing", &OccupationProfile::grid_spacing)
        .def_readonly("values", &OccupationProfile::values);

    m.def("build_occupation_profile", &build_occupation_profile, py::arg("path"),
          py::arg("epsilons"), py::arg("include_visited") = true,
          py::arg("domain_radius") = 1.0);
    m.def("sup_statistic", &sup_statistic, py::arg("profile"), py::arg("eps"));
    m.def("thick_point_mass", &thick_point_mass, py::arg("profile"), py::arg("a"),
          py::arg("eps"));

    py::class_<SpectrumEstimate>(m, "SpectrumEstimate")
        .def_readonly("a", &SpectrumEstimate::a)
        .def_readonly("epsilons", &SpectrumEstimate::epsilons)
        .def_readonly("masses", &SpectrumEstimate::masses)
        .def_readonly("excluded_levels", &SpectrumEstimate::excluded_levels)
        .def_readonly("slope", &SpectrumEstimate::slope);
    m.def(
        "coarse_spectrum",
        [](const std::vector<double>& eps, const std::vector<double>& masses, double a) {
            return coarse_spectrum(eps, masses, a);
        },
        py::arg("epsilons"), py::arg("masses"), py::arg("a"));
    m.def(
        "coarse_spectrum_from_profile",
        [](const OccupationProfile& p, double a) { return coarse_spectrum(p, a); },
        py::arg("profile"), py::arg("a"));

    m.def("cauchy_walk_normalizer", &cauchy_walk_normalizer,
          py::arg("n_cut") = 1'000'000);
    m.def("step_tail_mass", &step_tail_mass, py::arg("m"), py::arg("n_cut") = 1'000'000);

    py::class_<StepSampler>(m, "StepSampler")
        .def(py::init<std::int64_t>(), py::arg("n_cut") = 1'000'000)
        .def("__call__", [](const StepSampler& s, Rng& rng) { return s(rng); })
        .def_property_readonly("normalizer", &StepSampler::normalizer);

    py::class_<IntegerWalk>(m, "IntegerWalk")
        .def_readonly("positions", &IntegerWalk::positions)
        .def("steps_taken", &IntegerWalk::steps_taken)
        .def("local_time",
             [](const IntegerWalk& w, std::int64_t site) {
                 auto it = w.local_times.find(site);
                 return it == w.local_times.end() ? 0 : it->second;
             });
    m.def(
        "run_walk",
        [](std::int64_t n, std::uint64_t seed, std::int64_t n_cut) {
            const StepSampler sampler(n_cut);
            return run_walk(n, seed, sampler);
        },
        py::arg("n"), py::arg("seed"), py::arg("n_cut") = 1'000'000);
    m.def("max_local_time", &max_local_time, py::arg("walk"));

    py::class_<EmbeddedSrw>(m, "EmbeddedSrw")
        .def_readonly("values", &EmbeddedSrw::values)
        .def_readonly("complete", &EmbeddedSrw::complete);
    m.def("embedded_srw_walk", &embedded_srw_walk, py::arg("n_zero_visits"),
          py::arg("seed"), py::arg("max_steps") = 100'000'000);

    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed, int threads, std::size_t reps) {
            const Report r = run_verify_suite(suite, seed, threads, reps);
            return std::pair<bool, std::string>(r.pass(), r.to_string());
        },
        py::arg("suite"), py::arg("seed") = 1, py::arg("threads") = 1, py::arg("reps") = 0,
        "Run a verification suite; returns (pass, json_report). reps=0 keeps "
        "the acceptance-grade defaults.");
}
