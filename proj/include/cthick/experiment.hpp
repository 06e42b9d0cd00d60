#ifndef CTHICK_EXPERIMENT_HPP
#define CTHICK_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cthick/brownian.hpp"
#include "cthick/stable_sim.hpp"

namespace cthick {

using ordered_json = nlohmann::ordered_json;

// 17-significant-digit decimal, enough to round-trip any double.
std::string format_sig17(double value);

// Runs task(0..n-1) on a fixed-size worker pool. Results must be written to
// preallocated slots indexed by the task id so that reductions happen in a
// fixed order afterwards; parallel and serial schedules then give identical
// output.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task);

// CSV header "t,x", one row per grid point.
void write_path_csv(std::ostream& os, const CauchyPath& path);

// CSV header "t,x1,x2,L".
void write_planar_csv(std::ostream& os, const PlanarPath& path, const LocalTimeTrace& trace);

struct RunRecord {
    std::uint64_t seed = 0;
    double dt = 0.0;
    double barrier = 0.0;
    double exit_time = 0.0; // last simulated time when not killed
    bool killed = false;
    std::string file;
};

ordered_json manifest_json(std::uint64_t seed_base, const std::vector<RunRecord>& runs);

ordered_json excursion_report_json(Vec2 center, int k, double rho, long count,
                                   double target, bool perfect);

ordered_json spectrum_summary_json(double a, double slope, std::size_t n_paths,
                                   const std::vector<std::size_t>& excluded_levels);

} // namespace cthick

#endif
