#ifndef CTHICK_DISCRETE_WALK_HPP
#define CTHICK_DISCRETE_WALK_HPP

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "cthick/random.hpp"

namespace cthick {

// C = 1 / sum_{n in Z} 1/(1+n^2); symmetric truncation at |n| <= n_cut plus
// midpoint-corrected arctan tail, absolute error well under 1e-9.
double cauchy_walk_normalizer(std::int64_t n_cut = 1'000'000);

// Analytic tail mass P(|step| >= m) under the same correction.
double step_tail_mass(std::int64_t m, std::int64_t n_cut = 1'000'000);

// Exact sampler for P(step = n) = C/(1+n^2): cumulative table with binary
// search on |n| <= n_cut, inverse-arctan sampling beyond. Immutable after
// construction; safe to share across threads.
class StepSampler {
  public:
    explicit StepSampler(std::int64_t n_cut = 1'000'000);

    std::int64_t operator()(Rng& rng) const;
    double normalizer() const { return c_; }
    std::int64_t n_cut() const { return n_cut_; }

  private:
    std::int64_t n_cut_;
    double c_;
    double core_mass_;            // P(|step| <= n_cut)
    double tail_angle_;           // pi/2 - atan(n_cut + 1/2)
    std::vector<double> cum_;     // cum_[m] = P(|step| <= m)
};

struct IntegerWalk {
    std::vector<std::int64_t> positions; // S_0 = 0 .. S_n
    std::unordered_map<std::int64_t, std::int64_t> local_times;

    std::int64_t steps_taken() const {
        return static_cast<std::int64_t>(positions.size()) - 1;
    }
};

inline constexpr std::size_t kDefaultSiteCap = 1u << 26;

// n steps from 0 with the heavy-tailed step law; throws length_error when the
// number of distinct visited sites exceeds site_cap.
IntegerWalk run_walk(std::int64_t n, std::uint64_t seed, const StepSampler& sampler,
                     std::size_t site_cap = kDefaultSiteCap);

// Same walk driven by an arbitrary step source (stubs in tests).
IntegerWalk run_walk_with(std::int64_t n, const std::function<std::int64_t()>& step,
                          std::size_t site_cap = kDefaultSiteCap);

std::int64_t max_local_time(const IntegerWalk& walk);

struct EmbeddedSrw {
    std::vector<std::int64_t> values; // Y_1 .. Y_n
    bool complete = false;            // false when the step budget ran out first
};

// 2-D simple random walk; records X^1 at each time t >= 1 with X^2_t = 0,
// until n_zero_visits values are collected or max_steps is exhausted.
EmbeddedSrw embedded_srw_walk(std::int64_t n_zero_visits, std::uint64_t seed,
                              std::uint64_t max_steps = 100'000'000);

// Step source returns a direction in {0,1,2,3} = {+x1, -x1, +x2, -x2}.
EmbeddedSrw embedded_srw_walk_with(std::int64_t n_zero_visits,
                                   const std::function<int()>& direction,
                                   std::uint64_t max_steps);

} // namespace cthick

#endif
