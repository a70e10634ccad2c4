#pragma once

// Deterministic random streams. SplitMix64 (Steele, Lea & Flood) is the
// generator: 64-bit state, one add + three xor-shift-multiplies per draw,
// passes BigCrush, and is trivially reproducible across platforms. Streams
// are keyed by (seed, purpose tag) so independent consumers of the same seed
// never share or race a sequence.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>
#include <utility>

namespace isofactor {

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

class RngStream {
  public:
    RngStream(uint64_t seed, std::string_view tag)
        : state_(seed ^ fnv1a64(tag)) {
        // a few warmup draws decorrelate nearby seeds
        next_u64();
        next_u64();
    }

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller (cached second value)
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> complex_gaussian() {
        return {gaussian(), gaussian()};
    }

    bool coin() { return (next_u64() & 1ull) != 0; }

    // uniform integer in [0, n)
    uint64_t below(uint64_t n) { return next_u64() % n; }

  private:
    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace isofactor
