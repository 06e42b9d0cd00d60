#ifndef CTHICK_STABLE_SIM_HPP
#define CTHICK_STABLE_SIM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cthick/random.hpp"

namespace cthick {

struct SimConfig {
    double time_step = 1e-4;
    double barrier = 1.0;
    std::uint64_t max_steps = 10'000'000;
    std::uint64_t seed = 0;

    void validate() const;
};

// Discretely sampled Cauchy trajectory killed on leaving (-barrier, barrier).
// Grid times are i * time_step; they are not stored.
struct CauchyPath {
    double time_step = 0.0;
    std::vector<double> positions;
    bool killed = false;
    std::optional<std::size_t> exit_index;

    std::size_t steps() const { return positions.empty() ? 0 : positions.size() - 1; }
    double time_at(std::size_t i) const { return static_cast<double>(i) * time_step; }
    // First grid time at or beyond which the path is outside; only for killed paths.
    double exit_time() const { return static_cast<double>(*exit_index) * time_step; }
    // Number of grid positions that carry occupation time (pre-exit samples).
    std::size_t occupied_count() const {
        return killed ? *exit_index : positions.size();
    }
};

// One draw from the symmetric Cauchy law with the given scale.
// Consumes exactly one uniform variate (quantile transform).
double sample_cauchy_increment(double scale, Rng& rng);

// Runs from `start` until the first grid point outside (-barrier, barrier),
// or until max_steps increments have been taken (killed = false then).
CauchyPath simulate_until_exit(const SimConfig& config, double start);

// Left-Riemann occupation of the open interval (center-radius, center+radius):
// time_step times the number of pre-exit grid positions inside it.
double occupation_measure(const CauchyPath& path, double center, double radius);

// Count of positions[i], i < upto, with |positions[i] - center| < radius.
std::size_t occupation_count(std::span<const double> positions, std::size_t upto,
                             double center, double radius);

} // namespace cthick

#endif
