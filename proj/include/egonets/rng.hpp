#pragma once
// Deterministic random number generation. Distribution sampling is
// implemented here rather than through <random> distributions, whose output
// is implementation-defined; this keeps generated datasets identical across
// standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

namespace egonets {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // splitmix64 finalizer; derives independent substream seeds.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() { return gen_(); }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t bounded(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Marsaglia polar method with one cached deviate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // Knuth multiplication method, applied to chunks of lambda <= 16 and
    // summed (Poisson additivity keeps the result exact).
    std::uint64_t poisson(double lambda) {
        std::uint64_t total = 0;
        while (lambda > 16.0) {
            total += poisson_small(16.0);
            lambda -= 16.0;
        }
        return total + poisson_small(lambda);
    }

private:
    std::uint64_t poisson_small(double lambda) {
        if (lambda <= 0.0) return 0;
        const double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace egonets
