#include "cthick/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cthick {

double PlanarConfig::band() const {
    return band_halfwidth > 0.0 ? band_halfwidth : std::sqrt(step);
}

void PlanarConfig::validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("PlanarConfig: step must be positive");
    if (band_halfwidth < 0.0) {
        throw std::invalid_argument("PlanarConfig: band_halfwidth must be >= 0");
    }
}

namespace {

double dist(Vec2 p, Vec2 q) { return std::hypot(p.x - q.x, p.y - q.y); }

struct StopCheck {
    double band;
    bool operator()(const ExitDisk& r, Vec2 p) const {
        return dist(p, r.center) >= r.radius;
    }
    bool operator()(const AxisExit& r, Vec2 p) const {
        return std::abs(p.y) <= band && std::abs(p.x) >= r.barrier;
    }
    bool operator()(const NoStop&, Vec2) const { return false; }
};

} // namespace

PlanarPath simulate_planar_bm(const PlanarConfig& config, Vec2 start,
                              const StopRule& rule) {
    config.validate();
    const double band = config.band();
    const double sigma = std::sqrt(config.step);
    const StopCheck check{band};

    PlanarPath path;
    path.step = config.step;
    path.band_halfwidth = band;
    path.points.reserve(1024);
    path.points.push_back(start);

    auto hit = [&](Vec2 p) { return std::visit([&](const auto& r) { return check(r, p); }, rule); };

    if (hit(start)) {
        path.stopped = true;
        path.stop_index = 0;
        return path;
    }

    Rng rng(config.seed);
    Vec2 p = start;
    for (std::uint64_t i = 1; i <= config.max_steps; ++i) {
        const auto [z1, z2] = rng.normal_pair();
        p.x += sigma * z1;
        p.y += sigma * z2;
        path.points.push_back(p);
        if (hit(p)) {
            path.stopped = true;
            path.stop_index = static_cast<std::size_t>(i);
            break;
        }
    }
    return path;
}

LocalTimeTrace local_time_trace(const PlanarPath& path) {
    return local_time_trace(path, path.band_halfwidth);
}

LocalTimeTrace local_time_trace(const PlanarPath& path, double band_halfwidth) {
    if (!(band_halfwidth > 0.0)) {
        throw std::invalid_argument("local_time_trace: band halfwidth must be positive");
    }
    const double increment = path.step / (2.0 * band_halfwidth);
    LocalTimeTrace trace;
    trace.values.resize(path.points.size());
    double acc = 0.0;
    trace.values[0] = 0.0;
    for (std::size_t j = 0; j + 1 < path.points.size(); ++j) {
        if (std::abs(path.points[j].y) <= band_halfwidth) acc += increment;
        trace.values[j + 1] = acc;
    }
    return trace;
}

EmbeddedPath embedded_cauchy(const PlanarPath& path, const LocalTimeTrace& trace,
                             std::span<const double> levels) {
    if (trace.values.size() != path.points.size()) {
        throw std::invalid_argument("embedded_cauchy: trace not aligned with path");
    }
    EmbeddedPath out;
    out.levels.assign(levels.begin(), levels.end());
    out.positions.reserve(levels.size());
    double prev = -1.0;
    for (double t : levels) {
        if (t < 0.0 || t < prev) {
            throw std::invalid_argument("embedded_cauchy: levels must be nonnegative and nondecreasing");
        }
        prev = t;
    }
    auto it = trace.values.begin();
    for (double t : levels) {
        it = std::lower_bound(it, trace.values.end(), t);
        if (it == trace.values.end()) {
            out.truncated = true;
            break;
        }
        const std::size_t idx = static_cast<std::size_t>(it - trace.values.begin());
        out.positions.push_back(path.points[idx].x);
    }
    return out;
}

double intersection_local_time(const PlanarPath& path, const LocalTimeTrace& trace,
                               Vec2 center, double radius, std::size_t upto) {
    if (trace.values.size() != path.points.size()) {
        throw std::invalid_argument("intersection_local_time: trace not aligned with path");
    }
    if (upto > path.steps()) {
        throw std::invalid_argument("intersection_local_time: upto beyond path length");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < upto; ++j) {
        const double dl = trace.values[j + 1] - trace.values[j];
        if (dl != 0.0 && dist(path.points[j], center) < radius) sum += dl;
    }
    return sum;
}

long count_excursions(const PlanarPath& path, Vec2 center, double eps_outer,
                      double eps_inner, double rho) {
    if (!(eps_inner > 0.0) || !(eps_inner < eps_outer) || !(eps_outer < rho)) {
        throw std::invalid_argument("count_excursions: need 0 < eps_inner < eps_outer < rho");
    }
    long count = 0;
    bool armed = false;
    for (const Vec2& p : path.points) {
        const double d = dist(p, center);
        if (d >= rho) break;
        if (armed) {
            if (d <= eps_inner) {
                ++count;
                armed = false;
            }
        } else if (d >= eps_outer) {
            armed = true;
        }
    }
    return count;
}

ExcursionSchedule ExcursionSchedule::make(double a, int k_max, double epsilon1) {
    if (!(a > 0.0) || !(a < 2.0 / M_PI)) {
        throw std::invalid_argument("ExcursionSchedule: a must lie in (0, 2/pi)");
    }
    if (!(epsilon1 > 0.0)) throw std::invalid_argument("ExcursionSchedule: epsilon1 must be positive");
    if (k_max < 1) throw std::invalid_argument("ExcursionSchedule: k_max must be >= 1");

    ExcursionSchedule s;
    s.a_ = a;
    s.epsilon1_ = epsilon1;
    s.k_max_ = k_max;
    s.scales_.resize(k_max);
    s.targets_.resize(k_max);
    double eps = epsilon1;
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1) eps /= static_cast<double>(k) * k * k;
        s.scales_[k - 1] = eps;
        s.targets_[k - 1] = 3.0 * a * k * k * std::log(static_cast<double>(k));
    }
    return s;
}

double ExcursionSchedule::scale(int k) const {
    if (k < 1 || k > k_max_) throw std::out_of_range("ExcursionSchedule::scale: k out of range");
    return scales_[k - 1];
}

double ExcursionSchedule::target(int k) const {
    if (k < 1 || k > k_max_) throw std::out_of_range("ExcursionSchedule::target: k out of range");
    return targets_[k - 1];
}

std::size_t ExcursionSchedule::add_center(Vec2 x) {
    centers_.push_back(x);
    return centers_.size() - 1;
}

void ExcursionSchedule::record_count(std::size_t center_index, int k, double rho, long count) {
    if (center_index >= centers_.size()) {
        throw std::out_of_range("ExcursionSchedule::record_count: unknown center");
    }
    if (k < 2 || k > k_max_) throw std::out_of_range("ExcursionSchedule::record_count: k out of range");
    counts_[CountKey{center_index, k, rho}] = count;
}

bool ExcursionSchedule::has_count(std::size_t center_index, int k, double rho) const {
    return counts_.count(CountKey{center_index, k, rho}) > 0;
}

long ExcursionSchedule::count(std::size_t center_index, int k, double rho) const {
    auto it = counts_.find(CountKey{center_index, k, rho});
    if (it == counts_.end()) {
        throw std::runtime_error("ExcursionSchedule::count: count not recorded");
    }
    return it->second;
}

bool is_n_perfect(const ExcursionSchedule& schedule, std::size_t center_index,
                  int n, double rho_lo, double rho_hi) {
    for (int k = 2; k <= n; ++k) {
        const double nk = schedule.target(k);
        const long lo = schedule.count(center_index, k, rho_lo);
        const long hi = schedule.count(center_index, k, rho_hi);
        if (!(nk - k <= lo && lo <= hi && hi <= nk + k)) return false;
    }
    return true;
}

} // namespace cthick
