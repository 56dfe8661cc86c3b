#ifndef TMSC_RNG_HPP
#define TMSC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace tmsc {

/// Seeded random stream with platform-independent draws (std::mt19937_64
/// output mapped to doubles directly, no distribution objects).
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Integer in [lo, hi] inclusive.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(uniform() * static_cast<double>(hi - lo + 1));
    }

    // Standard normal via Box-Muller, one fresh pair per call.
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace tmsc

#endif  // TMSC_RNG_HPP
