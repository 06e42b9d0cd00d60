#ifndef CTHICK_VERIFY_HPP
#define CTHICK_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cthick/experiment.hpp"

namespace cthick {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct Report {
    std::string suite;
    ordered_json config;
    std::vector<std::uint64_t> seeds; // seed bases; per-task seeds follow derive_seed(base, i)
    std::vector<Check> checks;

    bool pass() const;
    ordered_json to_json() const;
    std::string to_string() const; // dumped JSON, byte-stable for fixed inputs
};

// Monte Carlo occupation vs Green quadrature, with coupled dt refinement:
// paths are simulated at dt/2 and the exact dt skeleton is read off the even
// indices of the same paths.
struct GreenMcOptions {
    std::uint64_t seed = 1;
    int threads = 1;
    std::size_t n_paths = 40'000;
    double dt = 1e-4; // coarse grid; the simulation itself runs at dt/2
    double barrier = 1.0;
    std::vector<double> radii = {0.1, 0.25, 0.5};
    std::uint64_t max_steps = 10'000'000; // fine-grid budget per path
};
Report verify_green_mc(const GreenMcOptions& opts);

// Moment bounds (sup-mean form, no calibration constant) and the
// exponential/Chebyshev tail bound against the empirical survival function.
struct BoundsOptions {
    std::uint64_t seed = 1;
    int threads = 1;
    std::size_t n_paths = 10'000;
    double dt = 1e-4;
    double barrier = 1.0;
    double r1 = 0.1;
    int k_max = 4;
    int grid_points = 100;
    int t_points = 10;
    std::uint64_t max_steps = 10'000'000;
};
Report verify_bounds(const BoundsOptions& opts);

// Excursion law, local-time calibration, intersection local time, and the
// representation-consistency identity.
struct ExcursionOptions {
    std::uint64_t seed = 1;
    int threads = 1;

    std::size_t exc_paths = 10'000;
    double exc_step = 1e-6;
    double eps_outer = 0.1;
    double eps_inner = 0.05;
    double rho = 0.5;

    std::size_t lt_paths = 10'000;
    double lt_step = 1e-4;
    double horizon = 1.0;

    std::size_t ilt_paths = 10'000;
    double ilt_step = 1e-5;
    double ilt_r1 = 0.02;
    double ilt_r2 = 0.1;
    double ilt_r = 0.5;

    std::size_t rep_paths = 100;
    double rep_step = 1e-5;
    double rep_barrier = 1.0;
    double rep_r1 = 0.25;
    std::size_t rep_levels = 4096;
    std::uint64_t rep_max_steps = 5'000'000;

    std::size_t sched_paths = 50;
    double sched_step = 2e-6;
    double sched_a = 0.3;
    std::uint64_t max_steps = 20'000'000;
};
Report verify_excursions(const ExcursionOptions& opts);

// Sup statistic distribution, coarse multifractal slope, monotonicity in a.
struct SpectrumOptions {
    std::uint64_t seed = 1;
    int threads = 1;
    std::size_t sup_paths = 100;
    double sup_dt = 1e-5;
    double sup_eps = 1e-3;
    std::size_t spec_paths = 200;
    double spec_dt = 1e-5;
    std::vector<double> eps_levels = {1e-2, 3.1622776601683794e-3, 1e-3,
                                      3.1622776601683794e-4, 1e-4};
    std::vector<double> a_levels = {0.1, 0.2, 0.3};
    double slope_rel_tol = 0.6;
    double barrier = 1.0;
    std::uint64_t max_steps = 10'000'000;
};
Report verify_spectrum(const SpectrumOptions& opts);

// Normalizing constant, step-law frequencies, T_n/(log n)^2 decade ratios.
struct WalkOptions {
    std::uint64_t seed = 1;
    int threads = 1;
    std::size_t step_draws = 1'000'000;
    std::int64_t n_cut = 1'000'000;
    std::vector<std::int64_t> checkpoints = {10'000, 100'000, 1'000'000};
    std::size_t walk_seeds = 20;
    std::int64_t tail_m = 100;
};
Report verify_walk(const WalkOptions& opts);

} // namespace cthick

#endif
