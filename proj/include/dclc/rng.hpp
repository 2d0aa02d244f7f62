#pragma once

#include <cmath>
#include <cstdint>

// Counter-based deterministic generator (splitmix64 finalizer in counter
// mode).  Streams derived from (root seed, stream index) are independent of
// draw order across trials, so parallel trial loops reproduce bit-identical
// results for a fixed root seed.

namespace dclc::rng {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27; z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    // Stream for one trial (or any sub-unit) of a seeded run.
    static CounterRng for_stream(std::uint64_t root_seed, std::uint64_t stream) {
        return CounterRng(mix64(root_seed + kGolden * (stream + 1)));
    }

    std::uint64_t next_u64() { return mix64(key_ + kGolden * ++counter_); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound;
    }

    // Standard normal via Box-Muller.
    double next_gaussian() {
        double u = next_double();
        while (u <= 0.0) u = next_double();
        const double v = next_double();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
    }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace dclc::rng
