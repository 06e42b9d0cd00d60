#ifndef CTHICK_BROWNIAN_HPP
#define CTHICK_BROWNIAN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cthick/random.hpp"

namespace cthick {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct PlanarConfig {
    double step = 1e-4;
    std::uint64_t max_steps = 10'000'000;
    std::uint64_t seed = 0;
    double band_halfwidth = 0.0; // 0 means "use sqrt(step)"

    double band() const;
    void validate() const;
};

// Stop at the first grid index with |B - center| >= radius.
struct ExitDisk {
    Vec2 center;
    double radius = 1.0;
};

// Discrete sigma-bar: first grid index with |B2| <= band and |B1| >= barrier.
struct AxisExit {
    double barrier = 1.0;
};

// Run for max_steps increments.
struct NoStop {};

using StopRule = std::variant<ExitDisk, AxisExit, NoStop>;

struct PlanarPath {
    double step = 0.0;
    double band_halfwidth = 0.0;
    std::vector<Vec2> points;
    bool stopped = false;
    std::optional<std::size_t> stop_index;

    std::size_t steps() const { return points.empty() ? 0 : points.size() - 1; }
};

// Nondecreasing band-occupation estimate of the local time of B2 at 0,
// aligned with the path grid; values[0] = 0 and the increment over step j is
// step/(2*band) when |B2_j| <= band.
struct LocalTimeTrace {
    std::vector<double> values;
};

// The Cauchy process read off the planar path: B1 sampled at the inverse
// local time of each requested level.
struct EmbeddedPath {
    std::vector<double> levels;
    std::vector<double> positions;
    bool truncated = false; // some levels lie beyond the accumulated local time
};

PlanarPath simulate_planar_bm(const PlanarConfig& config, Vec2 start,
                              const StopRule& rule);

LocalTimeTrace local_time_trace(const PlanarPath& path);

// Recompute the trace with a different band halfwidth (refinement studies).
LocalTimeTrace local_time_trace(const PlanarPath& path, double band_halfwidth);

EmbeddedPath embedded_cauchy(const PlanarPath& path, const LocalTimeTrace& trace,
                             std::span<const double> levels);

// Local-time mass collected inside the disk before the stop index:
// sum over j < upto of 1{|B_j - center| < radius} (L_{j+1} - L_j).
double intersection_local_time(const PlanarPath& path, const LocalTimeTrace& trace,
                               Vec2 center, double radius, std::size_t upto);

// Completed traversals from the circle of radius eps_outer to the circle of
// radius eps_inner about `center`, strictly before the path first leaves the
// disk of radius rho. Grid-crossing detection, no sub-step interpolation.
long count_excursions(const PlanarPath& path, Vec2 center, double eps_outer,
                      double eps_inner, double rho);

// Scales eps_k = eps1 (k!)^-3, targets n_k = 3 a k^2 log k, and the observed
// per-center excursion counts N_k^x(rho).
class ExcursionSchedule {
  public:
    static ExcursionSchedule make(double a, int k_max, double epsilon1 = 0.125);

    double a() const { return a_; }
    double epsilon1() const { return epsilon1_; }
    int k_max() const { return k_max_; }
    double scale(int k) const;  // eps_k, 1 <= k <= k_max
    double target(int k) const; // n_k, 1 <= k <= k_max

    std::size_t add_center(Vec2 x);
    const std::vector<Vec2>& centers() const { return centers_; }

    void record_count(std::size_t center_index, int k, double rho, long count);
    bool has_count(std::size_t center_index, int k, double rho) const;
    long count(std::size_t center_index, int k, double rho) const;

  private:
    double a_ = 0.0;
    double epsilon1_ = 0.125;
    int k_max_ = 0;
    std::vector<double> scales_;
    std::vector<double> targets_;
    std::vector<Vec2> centers_;

    struct CountKey {
        std::size_t center;
        int k;
        double rho;
        bool operator<(const CountKey& o) const {
            if (center != o.center) return center < o.center;
            if (k != o.k) return k < o.k;
            return rho < o.rho;
        }
    };
    std::map<CountKey, long> counts_;
};

// Conjunction of n_k - k <= N_k(rho_lo) <= N_k(rho_hi) <= n_k + k over
// k = 2..n; vacuously true for n < 2. Throws if a required count is missing.
bool is_n_perfect(const ExcursionSchedule& schedule, std::size_t center_index,
                  int n, double rho_lo = 0.5, double rho_hi = 2.0);

} // namespace cthick

#endif
