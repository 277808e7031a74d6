#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rankcp {

/// SplitMix64 counter-based generator (Steele, Lea & Flood 2014).
/// Every randomized routine in this library derives its stream from a
/// (seed, stream) pair, so replicates are reproducible independent of
/// evaluation order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Derive an independent stream from a base seed and a stream index.
    SplitMix64(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed) ^ mix(stream ^ 0x5851f42d4c957f2dULL)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); bound must be positive. Rejection
    /// sampling keeps the draw exactly uniform.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~0ULL - ~0ULL % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle driven by the repo RNG.
template <typename T>
void shuffle(std::span<T> values, SplitMix64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

/// Identity permutation 0..n-1, the starting point for shuffles.
inline std::vector<std::uint32_t> identity_permutation(std::size_t n) {
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
    return idx;
}

} // namespace rankcp
