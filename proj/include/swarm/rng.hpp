#pragma once

#include <cstdint>

namespace swarm {

// Counter-based deterministic random stream: SplitMix64 evaluated at an
// affine function of a draw counter. The stream is a pure function of
// (seed, counter), so the state serializes as two integers, any draw
// index is reachable in O(1), and the number of variates consumed is
// auditable by arithmetic. The engine publishes a fixed consumption
// order (see world.cpp).
class RandomStream {
public:
    RandomStream() = default;
    explicit RandomStream(uint64_t seed, uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    uint64_t next_u64() {
        uint64_t z = seed_ + ++counter_ * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, n), n >= 1. Consumes exactly one variate. The min
    // guard covers the corner where u*n rounds up to n.
    uint32_t next_index(uint32_t n) {
        auto i = static_cast<uint32_t>(next_uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    uint64_t seed() const { return seed_; }
    uint64_t counter() const { return counter_; }

    friend bool operator==(const RandomStream&, const RandomStream&) = default;

private:
    uint64_t seed_ = 0;
    uint64_t counter_ = 0;
};

}  // namespace swarm
