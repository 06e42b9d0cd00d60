#ifndef CTHICK_OCCUPATION_STATS_HPP
#define CTHICK_OCCUPATION_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "cthick/stable_sim.hpp"

namespace cthick {

// h(eps) = eps (log eps)^2, valid on (0, e^-2) where it is increasing.
double normalizer(double eps);

// eps_1 = eps0 and h(eps_{k+1}) = (1-delta) h(eps_k), solved by bisection.
std::vector<double> geometric_eps_sequence(double delta, double eps0, int n);

// Occupation measures mu(I(center, eps)) tabulated over a center set: a
// uniform cell-midpoint grid covering (-domain_radius, domain_radius) with
// spacing <= min(eps)/4, optionally augmented with the visited positions.
// The first grid_count centers are the grid (ascending); the rest are the
// sorted visited positions.
struct OccupationProfile {
    std::vector<double> epsilons;         // decreasing
    std::vector<double> centers;
    std::size_t grid_count = 0;
    double grid_spacing = 0.0;
    std::vector<std::vector<double>> values; // values[e][c]
};

OccupationProfile build_occupation_profile(const CauchyPath& path,
                                           std::vector<double> epsilons,
                                           bool include_visited = true,
                                           double domain_radius = 1.0);

// max over all centers of mu(I(x, eps)) / h(eps); eps must be tabulated.
double sup_statistic(const OccupationProfile& profile, double eps);

// grid_spacing * #{grid centers : mu(I(x, eps)) >= a h(eps)} -- the grid
// approximation of Leb{x : mu >= a h(eps)}. Visited-position centers are
// excluded (they would distort the Lebesgue approximation).
double thick_point_mass(const OccupationProfile& profile, double a, double eps);

struct SpectrumEstimate {
    double a = 0.0;
    std::vector<double> epsilons;
    std::vector<double> masses;
    std::vector<std::size_t> excluded_levels; // zero-mass levels left out of the fit
    double slope = 0.0;                       // least-squares log(mass) vs log(eps)
};

// Regression core; throws when fewer than 2 levels have positive mass.
SpectrumEstimate coarse_spectrum(std::span<const double> epsilons,
                                 std::span<const double> masses, double a);

SpectrumEstimate coarse_spectrum(const OccupationProfile& profile, double a);

} // namespace cthick

#endif
