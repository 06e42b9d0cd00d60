#ifndef CTHICK_RANDOM_HPP
#define CTHICK_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

namespace cthick {

// All randomness flows through this wrapper so that every draw is a fixed,
// documented function of the mt19937_64 stream. The <random> distributions
// are implementation-defined and would break bit-for-bit reproducibility
// across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform on the open interval (0,1): 53-bit grid shifted by half a cell,
    // so 0 and 1 are unreachable and the law is symmetric about 1/2.
    double uniform01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // One Box-Muller pair; two uniforms in, two independent N(0,1) out.
    std::pair<double, double> normal_pair() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * M_PI * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

  private:
    std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Per-replication seed stream: decorrelates nearby base seeds while staying
// a pure function of (base, index).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

// Quantile transform of the symmetric Cauchy law with scale s:
// CDF(x) = 1/2 + arctan(x/s)/pi, so x = s * tan(pi*(u - 1/2)).
inline double cauchy_quantile(double u, double scale) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("cauchy_quantile: scale must be positive");
    }
    return scale * std::tan(M_PI * (u - 0.5));
}

} // namespace cthick

#endif
