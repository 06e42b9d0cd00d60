#include <doctest.h>

#include <atomic>
#include <sstream>
#include <string>
#include <vector>

#include "cthick/experiment.hpp"
#include "cthick/verify.hpp"

using namespace cthick;

TEST_CASE("17-significant-digit formatting round-trips doubles") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double x = (rng.uniform01() - 0.5) * std::pow(10.0, 30.0 * rng.uniform01() - 15.0);
        const std::string s = format_sig17(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(format_sig17(1.0) == "1");
}

TEST_CASE("path CSV layout") {
    CauchyPath p;
    p.time_step = 0.5;
    p.positions = {0.0, 0.25, -1.5};
    p.killed = true;
    p.exit_index = 2;
    std::ostringstream os;
    write_path_csv(os, p);
    const std::string a = os.str();
    CHECK(a.substr(0, 4) == "t,x\n");
    CHECK(std::count(a.begin(), a.end(), '\n') == 4);
    std::ostringstream os2;
    write_path_csv(os2, p);
    CHECK(a == os2.str()); // byte-identical re-emission
}

TEST_CASE("planar CSV layout") {
    PlanarPath p;
    p.step = 0.1;
    p.band_halfwidth = 0.05;
    p.points = {{0, 0}, {0.1, 0.02}, {0.2, -0.3}};
    const auto trace = local_time_trace(p);
    std::ostringstream os;
    write_planar_csv(os, p, trace);
    CHECK(os.str().substr(0, 11) == "t,x1,x2,L\n0");
    CHECK(std::count(os.str().begin(), os.str().end(), '\n') == 4);
}

TEST_CASE("manifest carries seeds and exit metadata") {
    std::vector<RunRecord> runs(2);
    runs[0] = {derive_seed(7, 0), 1e-4, 1.0, 0.52, true, "path_00000.csv"};
    runs[1] = {derive_seed(7, 1), 1e-4, 1.0, 1000.0, false, "path_00001.csv"};
    const auto j = manifest_json(7, runs);
    CHECK(j["seed_base"] == 7);
    REQUIRE(j["runs"].size() == 2);
    CHECK(j["runs"][0]["killed"] == true);
    CHECK(j["runs"][1]["killed"] == false);
    CHECK(j["runs"][0]["seed"] == derive_seed(7, 0));

    const auto empty = manifest_json(7, {});
    CHECK(empty["runs"].empty());
}

TEST_CASE("parallel_for covers every index exactly once") {
    for (int threads : {1, 2, 5}) {
        std::vector<std::atomic<int>> hits(257);
        for (auto& h : hits) h = 0;
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) CHECK(h.load() == 1);
    }
}

TEST_CASE("verify reports are byte-identical across reruns and thread counts") {
    BoundsOptions small;
    small.seed = 99;
    small.n_paths = 300;
    small.t_points = 4;
    small.threads = 1;
    const std::string serial = verify_bounds(small).to_string();
    const std::string serial2 = verify_bounds(small).to_string();
    small.threads = 4;
    const std::string parallel = verify_bounds(small).to_string();
    CHECK(serial == serial2);
    CHECK(serial == parallel);

    const auto j = verify_bounds(small).to_json();
    CHECK(j.contains("config_hash"));
    CHECK(j.contains("seeds"));
    CHECK(j["suite"] == "bounds");
}

TEST_CASE("spectrum and excursion report shapes") {
    const auto s = spectrum_summary_json(0.2, 0.31, 200, {4});
    CHECK(s["a"] == 0.2);
    CHECK(s["theoretical_slope"] == doctest::Approx(0.2 * M_PI / 2.0));
    CHECK(s["excluded_levels"].size() == 1);

    const auto e = excursion_report_json(Vec2{0, 0}, 2, 0.5, 3, 2.49, false);
    CHECK(e["k"] == 2);
    CHECK(e["count"] == 3);
    CHECK(e["perfect"] == false);
}
