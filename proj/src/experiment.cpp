#include "cthick/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace cthick {

std::string format_sig17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                task(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

void write_path_csv(std::ostream& os, const CauchyPath& path) {
    os << "t,x\n";
    for (std::size_t i = 0; i < path.positions.size(); ++i) {
        os << format_sig17(path.time_at(i)) << ',' << format_sig17(path.positions[i]) << '\n';
    }
}

void write_planar_csv(std::ostream& os, const PlanarPath& path, const LocalTimeTrace& trace) {
    os << "t,x1,x2,L\n";
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        os << format_sig17(static_cast<double>(i) * path.step) << ','
           << format_sig17(path.points[i].x) << ',' << format_sig17(path.points[i].y) << ','
           << format_sig17(trace.values[i]) << '\n';
    }
}

ordered_json manifest_json(std::uint64_t seed_base, const std::vector<RunRecord>& runs) {
    ordered_json j;
    j["seed_base"] = seed_base;
    j["runs"] = ordered_json::array();
    for (const auto& r : runs) {
        ordered_json rec;
        rec["seed"] = r.seed;
        rec["dt"] = r.dt;
        rec["barrier"] = r.barrier;
        rec["exit_time"] = r.exit_time;
        rec["killed"] = r.killed;
        if (!r.file.empty()) rec["file"] = r.file;
        j["runs"].push_back(std::move(rec));
    }
    return j;
}

ordered_json excursion_report_json(Vec2 center, int k, double rho, long count,
                                   double target, bool perfect) {
    ordered_json j;
    j["center"] = {center.x, center.y};
    j["k"] = k;
    j["rho"] = rho;
    j["count"] = count;
    j["target"] = target;
    j["perfect"] = perfect;
    return j;
}

ordered_json spectrum_summary_json(double a, double slope, std::size_t n_paths,
                                   const std::vector<std::size_t>& excluded_levels) {
    ordered_json j;
    j["a"] = a;
    j["slope"] = slope;
    j["theoretical_slope"] = a * M_PI / 2.0;
    j["n_paths"] = n_paths;
    j["excluded_levels"] = excluded_levels;
    return j;
}

} // namespace cthick
