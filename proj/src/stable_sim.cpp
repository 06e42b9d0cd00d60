#include "cthick/stable_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace cthick {

void SimConfig::validate() const {
    if (!(time_step > 0.0)) throw std::invalid_argument("SimConfig: time_step must be positive");
    if (!(barrier > 0.0)) throw std::invalid_argument("SimConfig: barrier must be positive");
    if (max_steps < 1) throw std::invalid_argument("SimConfig: max_steps must be >= 1");
}

double sample_cauchy_increment(double scale, Rng& rng) {
    return cauchy_quantile(rng.uniform01(), scale);
}

CauchyPath simulate_until_exit(const SimConfig& config, double start) {
    config.validate();
    if (!(std::abs(start) < config.barrier)) {
        throw std::invalid_argument("simulate_until_exit: start must lie inside (-barrier, barrier)");
    }

    Rng rng(config.seed);
    CauchyPath path;
    path.time_step = config.time_step;
    path.positions.reserve(1024);
    path.positions.push_back(start);

    double x = start;
    for (std::uint64_t i = 1; i <= config.max_steps; ++i) {
        x += sample_cauchy_increment(config.time_step, rng);
        path.positions.push_back(x);
        if (std::abs(x) >= config.barrier) {
            path.killed = true;
            path.exit_index = static_cast<std::size_t>(i);
            break;
        }
    }
    return path;
}

std::size_t occupation_count(std::span<const double> positions, std::size_t upto,
                             double center, double radius) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < upto; ++i) {
        if (std::abs(positions[i] - center) < radius) ++n;
    }
    return n;
}

double occupation_measure(const CauchyPath& path, double center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("occupation_measure: radius must be positive");
    if (path.positions.empty()) throw std::invalid_argument("occupation_measure: empty path");
    const std::size_t upto = path.occupied_count();
    return path.time_step *
           static_cast<double>(occupation_count(path.positions, upto, center, radius));
}

} // namespace cthick
