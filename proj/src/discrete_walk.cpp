#include "cthick/discrete_walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cthick {

namespace {

// Midpoint-corrected tail: sum_{n > N} 1/(1+n^2) ~ pi/2 - atan(N + 1/2),
// accurate to O(N^-4) absolute.
double one_sided_tail(std::int64_t n_exclusive) {
    return M_PI / 2.0 - std::atan(static_cast<double>(n_exclusive) + 0.5);
}

double series_total(std::int64_t n_cut) {
    long double s = 1.0L;
    for (std::int64_t n = 1; n <= n_cut; ++n) {
        const long double d = 1.0L + static_cast<long double>(n) * static_cast<long double>(n);
        s += 2.0L / d;
    }
    s += 2.0L * static_cast<long double>(one_sided_tail(n_cut));
    return static_cast<double>(s);
}

} // namespace

double cauchy_walk_normalizer(std::int64_t n_cut) {
    if (n_cut < 1) throw std::invalid_argument("cauchy_walk_normalizer: n_cut must be >= 1");
    return 1.0 / series_total(n_cut);
}

double step_tail_mass(std::int64_t m, std::int64_t n_cut) {
    if (m < 1) return 1.0;
    return 2.0 * cauchy_walk_normalizer(n_cut) * one_sided_tail(m - 1);
}

StepSampler::StepSampler(std::int64_t n_cut) : n_cut_(n_cut) {
    if (n_cut < 1) throw std::invalid_argument("StepSampler: n_cut must be >= 1");
    c_ = 1.0 / series_total(n_cut);
    cum_.resize(static_cast<std::size_t>(n_cut) + 1);
    long double acc = c_;
    cum_[0] = static_cast<double>(acc);
    for (std::int64_t m = 1; m <= n_cut; ++m) {
        const long double d = 1.0L + static_cast<long double>(m) * static_cast<long double>(m);
        acc += 2.0L * static_cast<long double>(c_) / d;
        cum_[static_cast<std::size_t>(m)] = static_cast<double>(acc);
    }
    core_mass_ = cum_.back();
    tail_angle_ = one_sided_tail(n_cut);
}

std::int64_t StepSampler::operator()(Rng& rng) const {
    const double u = rng.uniform01();
    std::int64_t magnitude;
    if (u < core_mass_) {
        const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
        magnitude = static_cast<std::int64_t>(it - cum_.begin());
        if (magnitude == 0) return 0;
    } else {
        // Inverse CDF on the arctan tail surrogate: magnitude m solves
        // atan(m-1/2) <= pi/2 - w < atan(m+1/2) with w uniform on the tail
        // angle, i.e. m = round(cot(w)).
        const double v = (u - core_mass_) / (1.0 - core_mass_);
        const double w = std::max(v * tail_angle_, 1e-300);
        const double cot = 1.0 / std::tan(w);
        magnitude = std::max<std::int64_t>(n_cut_ + 1, std::llround(cot));
    }
    return rng.uniform01() < 0.5 ? -magnitude : magnitude;
}

namespace {

template <typename StepFn>
IntegerWalk run_walk_impl(std::int64_t n, StepFn&& step, std::size_t site_cap) {
    if (n < 0) throw std::invalid_argument("run_walk: n must be >= 0");
    IntegerWalk walk;
    walk.positions.reserve(static_cast<std::size_t>(n) + 1);
    walk.positions.push_back(0);
    walk.local_times.reserve(1024);
    walk.local_times[0] = 1;
    std::int64_t s = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        s += step();
        walk.positions.push_back(s);
        ++walk.local_times[s];
        if (walk.local_times.size() > site_cap) {
            throw std::length_error("run_walk: distinct-site cap exceeded");
        }
    }
    return walk;
}

} // namespace

IntegerWalk run_walk(std::int64_t n, std::uint64_t seed, const StepSampler& sampler,
                     std::size_t site_cap) {
    Rng rng(seed);
    return run_walk_impl(n, [&] { return sampler(rng); }, site_cap);
}

IntegerWalk run_walk_with(std::int64_t n, const std::function<std::int64_t()>& step,
                          std::size_t site_cap) {
    return run_walk_impl(n, [&] { return step(); }, site_cap);
}

std::int64_t max_local_time(const IntegerWalk& walk) {
    std::int64_t best = 0;
    for (const auto& [site, visits] : walk.local_times) best = std::max(best, visits);
    return best;
}

EmbeddedSrw embedded_srw_walk_with(std::int64_t n_zero_visits,
                                   const std::function<int()>& direction,
                                   std::uint64_t max_steps) {
    if (n_zero_visits < 1) {
        throw std::invalid_argument("embedded_srw_walk: n_zero_visits must be >= 1");
    }
    EmbeddedSrw out;
    out.values.reserve(static_cast<std::size_t>(n_zero_visits));
    std::int64_t x1 = 0, x2 = 0;
    for (std::uint64_t t = 1; t <= max_steps; ++t) {
        switch (direction()) {
            case 0: ++x1; break;
            case 1: --x1; break;
            case 2: ++x2; break;
            default: --x2; break;
        }
        if (x2 == 0) {
            out.values.push_back(x1);
            if (static_cast<std::int64_t>(out.values.size()) == n_zero_visits) {
                out.complete = true;
                break;
            }
        }
    }
    return out;
}

EmbeddedSrw embedded_srw_walk(std::int64_t n_zero_visits, std::uint64_t seed,
                              std::uint64_t max_steps) {
    Rng rng(seed);
    auto dir = [&rng]() {
        const int d = static_cast<int>(rng.uniform01() * 4.0);
        return d > 3 ? 3 : d;
    };
    return embedded_srw_walk_with(n_zero_visits, dir, max_steps);
}

} // namespace cthick
