#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rankcp/series.hpp"

namespace rankcp {

enum class Family { gaussian, cauchy };

/// One homogeneous stretch of synthetic observations: `length` draws
/// from the family with per-coordinate location and scale.
struct SegmentSpec {
    std::size_t length = 0;
    Family family = Family::gaussian;
    std::vector<double> location;
    std::vector<double> scale;
};

/// Concatenate independent draws per segment spec into one series.
/// Gaussian values come from Box-Muller, Cauchy values from
/// location + scale * tan(pi * (u - 1/2)); both consume the repo's
/// SplitMix64 stream in row-major order, so output is a pure function
/// of (specs, seed).
Series generate_series(std::span<const SegmentSpec> specs, std::uint64_t seed);

} // namespace rankcp
