#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dproc {

// Deterministic pseudorandom stream. All sampling helpers are implemented
// here (rather than via std::uniform_*_distribution) so that a given seed
// produces the same trajectory on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    void reseed(std::uint64_t seed) { engine_.seed(seed); }

    std::uint64_t next() { return engine_(); }

    // Unbiased integer in [0, bound) via rejection on the top residue range.
    std::uint64_t below(std::uint64_t bound) {
        // threshold = 2^64 mod bound
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in the half-open interval (0, 1]; never returns 0,
    // so it is safe as input to log().
    double unit_positive() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Number of failures before the first success for success probability p,
    // sampled by inverse transform from a single uniform variate.
    std::uint64_t geometric_failures(double p) {
        if (p >= 1.0) {
            (void)unit_positive();  // fixed draw count per call
            return 0;
        }
        const double u = unit_positive();
        const double k = std::floor(std::log(u) / std::log1p(-p));
        if (k <= 0.0) return 0;
        if (k >= 9.0e18) return static_cast<std::uint64_t>(9.0e18);
        return static_cast<std::uint64_t>(k);
    }

private:
    std::mt19937_64 engine_;
};

// 64-bit finalizer used to derive independent per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Per-trial seed derivation. Fixed across versions: documented in the output
// metadata so independent implementations can partition trials identically.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
    return splitmix64(base_seed ^ splitmix64(trial_index + 1));
}

}  // namespace dproc
