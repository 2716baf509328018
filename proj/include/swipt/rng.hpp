#pragma once

#include <cstdint>

namespace swipt {

// Deterministic, splittable pseudo-random generator built on the SplitMix64
// update. Every stochastic operation in the library takes one of these
// explicitly; there is no hidden global randomness. split() derives an
// independent child stream from the parent's seed and a stream index, so
// per-symbol streams do not depend on the order in which they are consumed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [-half_range, +half_range).
    double uniform_symmetric(double half_range) {
        return (2.0 * uniform01() - 1.0) * half_range;
    }

    // Child generator for stream `index`, independent of calls made on this
    // generator (derived from the construction seed, not the current state).
    SplitMix64 split(std::uint64_t index) const {
        std::uint64_t z = seed_ ^ (0x9e3779b97f4a7c15ull * (index + 1));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return SplitMix64(z ^ (z >> 31));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace swipt
