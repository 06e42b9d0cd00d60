#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cthick/brownian.hpp"

using namespace cthick;

namespace {

PlanarConfig config(double step, std::uint64_t max_steps, std::uint64_t seed,
                    double band = 0.0) {
    PlanarConfig c;
    c.step = step;
    c.max_steps = max_steps;
    c.seed = seed;
    c.band_halfwidth = band;
    return c;
}

// Hand-built path with constant second coordinate.
PlanarPath flat_path(double y, std::size_t n, double step, double band) {
    PlanarPath p;
    p.step = step;
    p.band_halfwidth = band;
    p.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.points[i] = Vec2{0.0, y};
    return p;
}

} // namespace

TEST_CASE("planar simulation basics") {
    SUBCASE("zero steps gives a single-point path") {
        const PlanarPath p = simulate_planar_bm(config(1e-3, 0, 1), Vec2{0.3, -0.2}, NoStop{});
        REQUIRE(p.points.size() == 1);
        CHECK(p.points[0].x == 0.3);
        CHECK(p.points[0].y == -0.2);
        CHECK(!p.stopped);
    }
    SUBCASE("increment variance and independence") {
        const std::size_t n = 1'000'000;
        const double step = 1e-3;
        const PlanarPath p = simulate_planar_bm(config(step, n, 2), Vec2{0, 0}, NoStop{});
        REQUIRE(p.points.size() == n + 1);
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            const double dx = p.points[i].x - p.points[i - 1].x;
            const double dy = p.points[i].y - p.points[i - 1].y;
            sx += dx;
            sy += dy;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
        const double vx = (sxx - sx * sx / n) / (n - 1);
        const double vy = (syy - sy * sy / n) / (n - 1);
        const double cov = (sxy - sx * sy / n) / (n - 1);
        CHECK(vx == doctest::Approx(step).epsilon(0.01));
        CHECK(vy == doctest::Approx(step).epsilon(0.01));
        // cov estimator sd ~ step / sqrt(n)
        CHECK(std::abs(cov) < 3.0 * step / std::sqrt(static_cast<double>(n)));
    }
    SUBCASE("exit-disk rule stops on or beyond the circle") {
        const Vec2 c{0.1, 0.0};
        const PlanarPath p =
            simulate_planar_bm(config(1e-4, 10'000'000, 3), Vec2{0.1, 0.0}, ExitDisk{c, 0.4});
        REQUIRE(p.stopped);
        const std::size_t k = *p.stop_index;
        CHECK(std::hypot(p.points[k].x - c.x, p.points[k].y - c.y) >= 0.4);
        for (std::size_t i = 0; i < k; ++i) {
            CHECK(std::hypot(p.points[i].x - c.x, p.points[i].y - c.y) < 0.4);
        }
    }
    SUBCASE("axis-exit rule needs both the band and the barrier") {
        const PlanarPath p =
            simulate_planar_bm(config(1e-4, 20'000'000, 4), Vec2{0, 0}, AxisExit{0.5});
        REQUIRE(p.stopped);
        const Vec2 end = p.points[*p.stop_index];
        CHECK(std::abs(end.y) <= p.band_halfwidth);
        CHECK(std::abs(end.x) >= 0.5);
    }
    SUBCASE("deterministic for a fixed seed") {
        const PlanarPath a = simulate_planar_bm(config(1e-3, 1000, 9), Vec2{0, 0}, NoStop{});
        const PlanarPath b = simulate_planar_bm(config(1e-3, 1000, 9), Vec2{0, 0}, NoStop{});
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            CHECK(a.points[i].x == b.points[i].x);
            CHECK(a.points[i].y == b.points[i].y);
        }
    }
}

TEST_CASE("band local-time estimator") {
    SUBCASE("never in the band") {
        const auto trace = local_time_trace(flat_path(5.0, 100, 1e-3, 0.1));
        for (double v : trace.values) CHECK(v == 0.0);
    }
    SUBCASE("always in the band") {
        const double step = 1e-3, band = 0.05;
        const auto trace = local_time_trace(flat_path(0.0, 100, step, band));
        for (std::size_t i = 0; i < trace.values.size(); ++i) {
            CHECK(trace.values[i] ==
                  doctest::Approx(step * static_cast<double>(i) / (2.0 * band)));
        }
    }
    SUBCASE("nondecreasing with bounded increments on a simulated path") {
        const PlanarPath p = simulate_planar_bm(config(1e-3, 20'000, 5), Vec2{0, 0}, NoStop{});
        const auto trace = local_time_trace(p);
        REQUIRE(trace.values.size() == p.points.size());
        CHECK(trace.values[0] == 0.0);
        const double max_inc = p.step / (2.0 * p.band_halfwidth);
        for (std::size_t i = 1; i < trace.values.size(); ++i) {
            const double inc = trace.values[i] - trace.values[i - 1];
            CHECK(inc >= 0.0);
            CHECK(inc <= max_inc + 1e-15);
        }
    }
    SUBCASE("E L_1 matches E|N(0,1)| = sqrt(2/pi) within 5%") {
        const double step = 2.5e-4;
        const auto n_steps = static_cast<std::uint64_t>(std::llround(1.0 / step));
        const std::size_t n_paths = 2000;
        double sum = 0.0;
        for (std::size_t i = 0; i < n_paths; ++i) {
            const PlanarPath p =
                simulate_planar_bm(config(step, n_steps, derive_seed(77, i)), Vec2{0, 0},
                                   NoStop{});
            sum += local_time_trace(p).values.back();
        }
        const double mean = sum / static_cast<double>(n_paths);
        CHECK(mean == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(0.05));
    }
}

TEST_CASE("embedded cauchy process") {
    SUBCASE("flat axis path embeds to zero") {
        PlanarPath p = flat_path(0.0, 50, 1e-2, 0.1);
        const auto trace = local_time_trace(p);
        const std::vector<double> levels = {0.0, 0.1, 0.2, 0.4};
        const EmbeddedPath e = embedded_cauchy(p, trace, levels);
        CHECK(!e.truncated);
        REQUIRE(e.positions.size() == levels.size());
        for (double x : e.positions) CHECK(x == 0.0);
    }
    SUBCASE("levels beyond the final local time set the truncation flag") {
        PlanarPath p = flat_path(5.0, 50, 1e-2, 0.1); // trace identically zero
        const auto trace = local_time_trace(p);
        const std::vector<double> levels = {0.0, 1.0};
        const EmbeddedPath e = embedded_cauchy(p, trace, levels);
        CHECK(e.truncated);
        CHECK(e.positions.size() == 1); // level 0 resolves to the start
    }
    SUBCASE("inverse local time is monotone along the grid") {
        const PlanarPath p = simulate_planar_bm(config(1e-4, 200'000, 6), Vec2{0, 0}, NoStop{});
        const auto trace = local_time_trace(p);
        const double top = trace.values.back();
        std::vector<double> levels;
        for (int i = 0; i < 64; ++i) levels.push_back(top * i / 64.0);
        const EmbeddedPath e = embedded_cauchy(p, trace, levels);
        CHECK(!e.truncated);
        // positions correspond to nondecreasing indices by construction; check
        // via re-deriving the indices
        std::size_t prev = 0;
        for (double t : levels) {
            const auto it = std::lower_bound(trace.values.begin(), trace.values.end(), t);
            const std::size_t idx = static_cast<std::size_t>(it - trace.values.begin());
            CHECK(idx >= prev);
            prev = idx;
        }
        CHECK_THROWS_AS(embedded_cauchy(p, trace, std::vector<double>{0.2, 0.1}),
                        std::invalid_argument);
    }
    SUBCASE("one-step law matches Cauchy(t) (KS over independent paths)") {
        const double step = 1e-4;
        const double level = 0.25;
        const std::size_t n_paths = 10'000;
        std::vector<double> values;
        values.reserve(n_paths);
        std::size_t truncated = 0;
        for (std::size_t i = 0; i < n_paths; ++i) {
            const PlanarPath p = simulate_planar_bm(config(step, 600'000, derive_seed(999, i)),
                                                    Vec2{0, 0}, NoStop{});
            const auto trace = local_time_trace(p);
            const std::vector<double> levels = {level};
            const EmbeddedPath e = embedded_cauchy(p, trace, levels);
            if (e.truncated) {
                ++truncated;
                continue;
            }
            values.push_back(e.positions[0]);
        }
        // Budget-truncated paths bias the tails; keep them rare.
        CHECK(static_cast<double>(truncated) < 0.04 * static_cast<double>(n_paths));
        std::sort(values.begin(), values.end());
        const auto n = static_cast<double>(values.size());
        double ks = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double f = 0.5 + std::atan(values[i] / level) / M_PI;
            ks = std::max({ks, std::abs(f - static_cast<double>(i) / n),
                           std::abs(f - static_cast<double>(i + 1) / n)});
        }
        CHECK(ks < 0.05);
    }
}

TEST_CASE("intersection local time") {
    SUBCASE("region away from the axis band carries no mass") {
        const PlanarPath p = simulate_planar_bm(config(1e-3, 50'000, 8), Vec2{0, 0}, NoStop{});
        const auto trace = local_time_trace(p);
        CHECK(intersection_local_time(p, trace, Vec2{0.0, 3.0}, 1.0, p.steps()) == 0.0);
    }
    SUBCASE("the whole plane recovers the total local time") {
        const PlanarPath p = simulate_planar_bm(config(1e-3, 50'000, 8), Vec2{0, 0}, NoStop{});
        const auto trace = local_time_trace(p);
        CHECK(intersection_local_time(p, trace, Vec2{0, 0}, 1e18, p.steps()) ==
              doctest::Approx(trace.values.back()));
        CHECK(intersection_local_time(p, trace, Vec2{0, 0}, 1e18, 100) ==
              doctest::Approx(trace.values[100]));
    }
    SUBCASE("additive over disjoint disks and monotone under inclusion") {
        const PlanarPath p = simulate_planar_bm(config(1e-3, 50'000, 10), Vec2{0, 0}, NoStop{});
        const auto trace = local_time_trace(p);
        const std::size_t upto = p.steps();
        const double left = intersection_local_time(p, trace, Vec2{-0.5, 0.0}, 0.25, upto);
        const double right = intersection_local_time(p, trace, Vec2{0.5, 0.0}, 0.25, upto);
        double both = 0.0;
        for (std::size_t j = 0; j < upto; ++j) {
            const double dl = trace.values[j + 1] - trace.values[j];
            const Vec2 q = p.points[j];
            const bool in_left = std::hypot(q.x + 0.5, q.y) < 0.25;
            const bool in_right = std::hypot(q.x - 0.5, q.y) < 0.25;
            if (in_left || in_right) both += dl;
        }
        CHECK(left + right == doctest::Approx(both));
        CHECK(intersection_local_time(p, trace, Vec2{0, 0}, 0.2, upto) <=
              intersection_local_time(p, trace, Vec2{0, 0}, 0.4, upto));
        CHECK_THROWS_AS(intersection_local_time(p, trace, Vec2{0, 0}, 1.0, upto + 1),
                        std::invalid_argument);
    }
}

TEST_CASE("excursion counting") {
    SUBCASE("path that never reaches the outer circle") {
        PlanarPath p = flat_path(0.0, 10, 1.0, 0.1);
        for (auto& q : p.points) q = Vec2{0.0, 0.0}; // sits at the center
        CHECK(count_excursions(p, Vec2{0, 0}, 0.5, 0.25, 2.0) == 0);
    }
    SUBCASE("synthetic out-in-out-in trace counts two traversals") {
        PlanarPath p;
        p.step = 1.0;
        p.band_halfwidth = 0.1;
        for (double r : {1.2, 0.4, 1.1, 0.3, 2.5}) p.points.push_back(Vec2{r, 0.0});
        CHECK(count_excursions(p, Vec2{0, 0}, 1.0, 0.5, 2.0) == 2);
    }
    SUBCASE("nothing counts at or after leaving the rho disk") {
        PlanarPath p;
        p.step = 1.0;
        p.band_halfwidth = 0.1;
        for (double r : {1.2, 2.5, 0.3}) p.points.push_back(Vec2{r, 0.0});
        CHECK(count_excursions(p, Vec2{0, 0}, 1.0, 0.5, 2.0) == 0);
    }
    SUBCASE("threshold ordering is validated") {
        PlanarPath p = flat_path(0.0, 2, 1.0, 0.1);
        CHECK_THROWS_AS(count_excursions(p, Vec2{0, 0}, 0.5, 0.6, 2.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(count_excursions(p, Vec2{0, 0}, 0.5, 0.25, 0.4),
                        std::invalid_argument);
    }
    SUBCASE("counts are nondecreasing in rho on simulated paths") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const PlanarPath p = simulate_planar_bm(config(1e-4, 2'000'000, 100 + seed),
                                                    Vec2{0.25, 0.0},
                                                    ExitDisk{Vec2{0, 0}, 2.0});
            const long n_small = count_excursions(p, Vec2{0, 0}, 0.125, 0.05, 0.5);
            const long n_big = count_excursions(p, Vec2{0, 0}, 0.125, 0.05, 2.0);
            CHECK(n_small <= n_big);
        }
    }
    SUBCASE("geometric-law mean from log-radius ratios (smoke size)") {
        const double b = 0.1, a = 0.05, rho = 0.5;
        const double q = std::log(b / a) / std::log(rho / a);
        const double ref = (1.0 - q) / q;
        const std::size_t n_paths = 1000;
        double sum = 0.0;
        for (std::size_t i = 0; i < n_paths; ++i) {
            const PlanarPath p = simulate_planar_bm(config(4e-6, 10'000'000,
                                                           derive_seed(321, i)),
                                                    Vec2{b, 0.0}, ExitDisk{Vec2{0, 0}, rho});
            sum += static_cast<double>(count_excursions(p, Vec2{0, 0}, b, a, rho));
        }
        const double mean = sum / static_cast<double>(n_paths);
        // 1e3 paths: ~3 sigma is about 10% here; the acceptance suite runs the
        // full 1e4-path version at 5%.
        CHECK(mean == doctest::Approx(ref).epsilon(0.12));
    }
}

TEST_CASE("excursion schedule and n-perfect verdicts") {
    const auto s = ExcursionSchedule::make(0.3, 5);
    SUBCASE("scales decrease as (k!)^-3, targets grow") {
        CHECK(s.scale(1) == 0.125);
        CHECK(s.scale(2) == doctest::Approx(0.125 / 8.0));
        CHECK(s.scale(3) == doctest::Approx(0.125 / (6.0 * 6.0 * 6.0)));
        for (int k = 2; k <= 5; ++k) {
            CHECK(s.scale(k) < s.scale(k - 1));
            CHECK(s.target(k) >= s.target(k - 1));
        }
        CHECK(s.target(2) == doctest::Approx(3.0 * 0.3 * 4.0 * std::log(2.0)));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(ExcursionSchedule::make(0.0, 3), std::invalid_argument);
        CHECK_THROWS_AS(ExcursionSchedule::make(0.7, 3), std::invalid_argument);
        CHECK_THROWS_AS(ExcursionSchedule::make(0.3, 0), std::invalid_argument);
    }
    SUBCASE("vacuous, exact, and violated verdicts") {
        auto sched = ExcursionSchedule::make(0.3, 4);
        const std::size_t c = sched.add_center(Vec2{0, 0});
        CHECK(is_n_perfect(sched, c, 1)); // empty conjunction

        for (int k = 2; k <= 4; ++k) {
            const long nk = std::lround(sched.target(k));
            sched.record_count(c, k, 0.5, nk);
            sched.record_count(c, k, 2.0, nk);
        }
        CHECK(is_n_perfect(sched, c, 4));

        // One count pushed above n_k + k breaks the conjunction.
        sched.record_count(c, 3, 2.0,
                           static_cast<long>(std::floor(sched.target(3))) + 3 + 1);
        CHECK(!is_n_perfect(sched, c, 4));
        CHECK(is_n_perfect(sched, c, 2)); // shallower levels unaffected

        // Missing data is an error, not a verdict.
        CHECK_THROWS_AS(is_n_perfect(sched, c, 5), std::runtime_error);
    }
}
