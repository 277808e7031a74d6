#include "rankcp/datagen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rankcp/rng.hpp"

namespace rankcp {

namespace {

double standard_normal(SplitMix64& rng) {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double standard_cauchy(SplitMix64& rng) {
    double u;
    do {
        u = rng.next_double();
    } while (u == 0.0);
    return std::tan(std::numbers::pi * (u - 0.5));
}

} // namespace

Series generate_series(std::span<const SegmentSpec> specs, std::uint64_t seed) {
    if (specs.empty()) throw std::invalid_argument("generate_series: no segment specs");
    const std::size_t d = specs.front().location.size();
    std::size_t total = 0;
    for (const auto& spec : specs) {
        if (spec.length == 0) throw std::invalid_argument("generate_series: segment length must be >= 1");
        if (spec.location.size() != d || spec.scale.size() != d)
            throw std::invalid_argument("generate_series: inconsistent dimensions across specs");
        for (const double s : spec.scale)
            if (!(s > 0.0)) throw std::invalid_argument("generate_series: scale must be positive");
        total += spec.length;
    }
    if (d == 0) throw std::invalid_argument("generate_series: dimension must be positive");

    Series series(total, d);
    SplitMix64 rng(seed);
    std::size_t row = 0;
    for (const auto& spec : specs) {
        for (std::size_t i = 0; i < spec.length; ++i, ++row) {
            for (std::size_t c = 0; c < d; ++c) {
                const double draw = spec.family == Family::gaussian ? standard_normal(rng)
                                                                    : standard_cauchy(rng);
                series.at(row, c) = spec.location[c] + spec.scale[c] * draw;
            }
        }
    }
    return series;
}

} // namespace rankcp
