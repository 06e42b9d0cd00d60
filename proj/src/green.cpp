#include "cthick/green.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace cthick {

void SlitDomain::validate() const {
    if (!(radius > 0.0)) throw std::invalid_argument("SlitDomain: radius must be positive");
}

void BoundEnv::validate() const {
    if (!(r1 > 0.0) || !(r3 > 0.0)) {
        throw std::invalid_argument("BoundEnv: radii must be positive");
    }
    if (!(c > 0.0)) throw std::invalid_argument("BoundEnv: c must be positive");
    if (r1 > r3 / 2.0) {
        throw std::invalid_argument("BoundEnv: hypothesis r1 <= r3/2 violated");
    }
}

double conformal_h(double x) {
    if (!(std::abs(x) < 1.0)) {
        throw std::domain_error("conformal_h: real argument lies on the slit (|x| >= 1)");
    }
    const double v = std::sqrt((1.0 + x) / (1.0 - x));
    return (v - 1.0) / (v + 1.0);
}

std::complex<double> conformal_h(std::complex<double> z) {
    if (z.imag() == 0.0 && !(std::abs(z.real()) < 1.0)) {
        throw std::domain_error("conformal_h: argument lies on the slit");
    }
    const std::complex<double> v = std::sqrt((1.0 + z) / (1.0 - z));
    return (v - 1.0) / (v + 1.0);
}

double green_function(double x0, double x, const SlitDomain& domain) {
    domain.validate();
    const double r = domain.radius;
    if (!(std::abs(x0) < r) || !(std::abs(x) < r)) {
        throw std::domain_error("green_function: arguments must lie in (-r, r)");
    }
    if (x == x0) return std::numeric_limits<double>::infinity();
    const double hx = conformal_h(x / r);
    const double h0 = conformal_h(x0 / r);
    return -std::log(std::abs((hx - h0) / (1.0 - hx * h0))) / (2.0 * M_PI);
}

double green_complex(std::complex<double> z0, std::complex<double> z,
                     const SlitDomain& domain) {
    domain.validate();
    const double r = domain.radius;
    if (z == z0) return std::numeric_limits<double>::infinity();
    const std::complex<double> hz = conformal_h(z / r);
    const std::complex<double> h0 = conformal_h(z0 / r);
    return -std::log(std::abs((hz - h0) / (1.0 - hz * std::conj(h0)))) / (2.0 * M_PI);
}

namespace {

// 15-point Gauss-Legendre on (-1, 1); nodes are interior, so endpoint
// singularities are never evaluated.
constexpr std::array<double, 8> kGlNodes = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.9372733924007060,
    0.9879925180204854,
};
constexpr std::array<double, 8> kGlWeights = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};

double gauss15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = kGlWeights[0] * f(mid);
    for (std::size_t i = 1; i < kGlNodes.size(); ++i) {
        const double dx = half * kGlNodes[i];
        sum += kGlWeights[i] * (f(mid - dx) + f(mid + dx));
    }
    return sum * half;
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss15(f, a, mid);
    const double right = gauss15(f, mid, b);
    const double err = std::abs(left + right - whole);
    // Depth 60 grades the subintervals geometrically down to ~1e-18 of the
    // original width, past which the log singularity contributes nothing.
    if (err < tol || depth >= 60 || mid <= a || mid >= b) {
        return left + right;
    }
    return adaptive(f, a, mid, 0.5 * tol, left, depth + 1) +
           adaptive(f, mid, b, 0.5 * tol, right, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(a < b)) return 0.0;
    return adaptive(f, a, b, tol, gauss15(f, a, b), 0);
}

} // namespace

double expected_occupation(double x0, double center, double radius,
                           const SlitDomain& domain, double abs_tol) {
    domain.validate();
    const double r = domain.radius;
    if (!(radius >= 0.0)) throw std::invalid_argument("expected_occupation: radius must be >= 0");
    if (!(std::abs(x0) < r)) {
        throw std::domain_error("expected_occupation: x0 must lie in (-r, r)");
    }
    const double lo = center - radius;
    const double hi = center + radius;
    if (lo < -r || hi > r) {
        throw std::domain_error("expected_occupation: interval escapes (-r, r)");
    }
    if (radius == 0.0) return 0.0;

    auto g = [&](double x) { return green_function(x0, x, domain); };
    // Split at the singularity and skip a sliver around it where h(x)-h(x0)
    // cancels to zero in doubles. The excluded mass is O(sliver |log sliver|),
    // orders of magnitude below the quadrature tolerance.
    const double sliver = 1e-13 * r;
    double total = 0.0;
    if (x0 - sliver > lo) {
        total += integrate(g, lo, std::min(x0 - sliver, hi), 0.5 * abs_tol);
    }
    if (x0 + sliver < hi) {
        total += integrate(g, std::max(x0 + sliver, lo), hi, 0.5 * abs_tol);
    }
    return total;
}

double mean_bound(const BoundEnv& env) {
    env.validate();
    return env.r1 * (env.c + (2.0 / M_PI) * std::log(env.r3 / env.r1));
}

double moment_bound(const BoundEnv& env, int k) {
    if (k < 0) throw std::invalid_argument("moment_bound: k must be >= 0");
    const double m = mean_bound(env);
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result *= static_cast<double>(i) * m;
    }
    return result;
}

double tail_bound_from_mean(double t, double mean) {
    if (!(t > 0.0)) throw std::invalid_argument("tail_bound: t must be positive");
    if (!(mean > 0.0)) throw std::invalid_argument("tail_bound: mean must be positive");
    const double ratio = t / mean;
    return ratio * std::exp(1.0 - ratio);
}

double tail_bound(double t, const BoundEnv& env) {
    return tail_bound_from_mean(t, mean_bound(env));
}

} // namespace cthick
