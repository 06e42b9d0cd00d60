#ifndef CTHICK_GREEN_HPP
#define CTHICK_GREEN_HPP

#include <complex>

namespace cthick {

// The plane minus the two rays (-inf, -radius] and [radius, inf).
struct SlitDomain {
    double radius = 1.0;
    void validate() const;
};

// Inputs of the occupation-moment bounds: inner radius r1, outer radius r3
// (with r1 <= r3/2), and the calibration constant c, which the theory leaves
// unspecified and is therefore a caller-supplied parameter.
struct BoundEnv {
    double r1 = 0.0;
    double r3 = 0.0;
    double c = 0.0;
    void validate() const;
};

// Conformal map of the unit slit plane onto the unit disk, h(0) = 0.
// Real arguments must satisfy |x| < 1.
double conformal_h(double x);

// Complex variant on the slit plane; principal square-root branch, whose cut
// coincides with the domain slit so h stays single-valued.
std::complex<double> conformal_h(std::complex<double> z);

// Green function of the slit domain restricted to the real segment,
//   G(x0,x) = -(1/2pi) log| (h(x/r)-h(x0/r)) / (1 - h(x/r) h(x0/r)) |.
// Returns +infinity at x = x0.
double green_function(double x0, double x, const SlitDomain& domain);

// Full planar Green function; restriction to the real axis equals
// green_function.
double green_complex(std::complex<double> z0, std::complex<double> z,
                     const SlitDomain& domain);

// Integral of G(x0, .) over the interval (center-radius, center+radius),
// which must stay inside [-r, r]. Adaptive bisection with a fixed-order
// Gauss rule per subinterval; the interval is split at x0 when the
// logarithmic singularity lies inside, and bisection grades geometrically
// into it. Absolute tolerance.
//
// The expected occupation measure of the killed Cauchy process is twice this
// integral (the planar representation carries a factor 2).
double expected_occupation(double x0, double center, double radius,
                           const SlitDomain& domain, double abs_tol = 1e-8);

// r1 * [c + (2/pi) log(r3/r1)]
double mean_bound(const BoundEnv& env);

// k! * r1^k * [c + (2/pi) log(r3/r1)]^k
double moment_bound(const BoundEnv& env, int k);

// (t/M) exp(1 - t/M); exceeds 1 for t < M, callers clamp as needed.
double tail_bound_from_mean(double t, double mean);
double tail_bound(double t, const BoundEnv& env);

} // namespace cthick

#endif
