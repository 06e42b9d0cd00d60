#include "cthick/occupation_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cthick {

double normalizer(double eps) {
    if (!(eps > 0.0) || !(eps < std::exp(-2.0))) {
        throw std::domain_error("normalizer: eps must lie in (0, e^-2)");
    }
    const double l = std::log(eps);
    return eps * l * l;
}

std::vector<double> geometric_eps_sequence(double delta, double eps0, int n) {
    if (!(delta >= 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument("geometric_eps_sequence: delta must lie in [0, 1)");
    }
    if (!(eps0 > 0.0) || !(eps0 < std::exp(-2.0))) {
        throw std::invalid_argument("geometric_eps_sequence: eps0 must lie in (0, e^-2)");
    }
    if (n < 1) throw std::invalid_argument("geometric_eps_sequence: n must be >= 1");

    std::vector<double> seq;
    seq.reserve(n);
    seq.push_back(eps0);
    for (int k = 1; k < n; ++k) {
        const double prev = seq.back();
        const double target = (1.0 - delta) * normalizer(prev);
        // h is increasing on (0, e^-2), so bisect on (0, prev].
        double lo = 0.0, hi = prev;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (normalizer(mid) < target) {
                lo = mid;
            } else {
                hi = mid;
            }
            if (hi - lo <= 1e-12 * hi) break;
        }
        seq.push_back(0.5 * (lo + hi));
    }
    return seq;
}

namespace {

// counts[j] = #{p in sorted positions : c_j - eps < p < c_j + eps} for the
// ascending center list, by a two-pointer sweep.
void count_in_windows(std::span<const double> sorted_positions,
                      std::span<const double> ascending_centers, double eps,
                      double time_step, std::vector<double>& out) {
    std::size_t lo = 0, hi = 0;
    const std::size_t n = sorted_positions.size();
    for (double c : ascending_centers) {
        while (lo < n && sorted_positions[lo] <= c - eps) ++lo;
        if (hi < lo) hi = lo;
        while (hi < n && sorted_positions[hi] < c + eps) ++hi;
        out.push_back(time_step * static_cast<double>(hi - lo));
    }
}

} // namespace

OccupationProfile build_occupation_profile(const CauchyPath& path,
                                           std::vector<double> epsilons,
                                           bool include_visited,
                                           double domain_radius) {
    if (path.positions.empty()) {
        throw std::invalid_argument("build_occupation_profile: empty path");
    }
    if (epsilons.empty()) {
        throw std::invalid_argument("build_occupation_profile: need at least one eps");
    }
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) {
            throw std::invalid_argument("build_occupation_profile: eps must be positive");
        }
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
            throw std::invalid_argument("build_occupation_profile: eps list must be decreasing");
        }
    }
    if (!(domain_radius > 0.0)) {
        throw std::invalid_argument("build_occupation_profile: domain_radius must be positive");
    }

    OccupationProfile profile;
    profile.epsilons = std::move(epsilons);

    // Cell-midpoint grid: n cells of equal width <= min(eps)/4 tiling
    // (-R, R), so that thick-point masses never exceed the domain length.
    const double min_eps = profile.epsilons.back();
    const auto n_cells =
        static_cast<std::size_t>(std::ceil(2.0 * domain_radius / (min_eps / 4.0)));
    profile.grid_spacing = 2.0 * domain_radius / static_cast<double>(n_cells);
    profile.grid_count = n_cells;
    profile.centers.reserve(n_cells);
    for (std::size_t j = 0; j < n_cells; ++j) {
        profile.centers.push_back(-domain_radius +
                                  (static_cast<double>(j) + 0.5) * profile.grid_spacing);
    }

    std::vector<double> sorted(path.positions.begin(),
                               path.positions.begin() +
                                   static_cast<std::ptrdiff_t>(path.occupied_count()));
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> visited;
    if (include_visited) {
        visited = sorted;
        profile.centers.insert(profile.centers.end(), visited.begin(), visited.end());
    }

    profile.values.resize(profile.epsilons.size());
    for (std::size_t e = 0; e < profile.epsilons.size(); ++e) {
        auto& row = profile.values[e];
        row.reserve(profile.centers.size());
        count_in_windows(sorted,
                         std::span<const double>(profile.centers.data(), profile.grid_count),
                         profile.epsilons[e], path.time_step, row);
        if (!visited.empty()) {
            count_in_windows(sorted, visited, profile.epsilons[e], path.time_step, row);
        }
    }
    return profile;
}

namespace {

std::size_t eps_index(const OccupationProfile& profile, double eps) {
    for (std::size_t e = 0; e < profile.epsilons.size(); ++e) {
        if (profile.epsilons[e] == eps) return e;
    }
    throw std::out_of_range("eps not tabulated in this profile");
}

} // namespace

double sup_statistic(const OccupationProfile& profile, double eps) {
    const std::size_t e = eps_index(profile, eps);
    const double h = normalizer(eps);
    double best = 0.0;
    for (double v : profile.values[e]) best = std::max(best, v);
    return best / h;
}

double thick_point_mass(const OccupationProfile& profile, double a, double eps) {
    if (!(a > 0.0)) throw std::invalid_argument("thick_point_mass: a must be positive");
    const std::size_t e = eps_index(profile, eps);
    const double threshold = a * normalizer(eps);
    std::size_t count = 0;
    for (std::size_t j = 0; j < profile.grid_count; ++j) {
        if (profile.values[e][j] >= threshold) ++count;
    }
    return profile.grid_spacing * static_cast<double>(count);
}

SpectrumEstimate coarse_spectrum(std::span<const double> epsilons,
                                 std::span<const double> masses, double a) {
    if (epsilons.size() != masses.size()) {
        throw std::invalid_argument("coarse_spectrum: size mismatch");
    }
    SpectrumEstimate est;
    est.a = a;
    est.epsilons.assign(epsilons.begin(), epsilons.end());
    est.masses.assign(masses.begin(), masses.end());

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (masses[i] > 0.0) {
            lx.push_back(std::log(epsilons[i]));
            ly.push_back(std::log(masses[i]));
        } else {
            est.excluded_levels.push_back(i);
        }
    }
    if (lx.size() < 2) {
        throw std::runtime_error("coarse_spectrum: fewer than 2 positive-mass levels");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    est.slope = sxy / sxx;
    return est;
}

SpectrumEstimate coarse_spectrum(const OccupationProfile& profile, double a) {
    std::vector<double> masses;
    masses.reserve(profile.epsilons.size());
    for (double eps : profile.epsilons) {
        masses.push_back(thick_point_mass(profile, a, eps));
    }
    return coarse_spectrum(profile.epsilons, masses, a);
}

} // namespace cthick
