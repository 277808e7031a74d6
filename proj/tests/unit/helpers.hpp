#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rankcp/energy.hpp"
#include "rankcp/rng.hpp"
#include "rankcp/series.hpp"

namespace testutil {

inline rankcp::Series random_series(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                    double lo = 0.0, double hi = 1.0) {
    rankcp::SplitMix64 rng(seed);
    rankcp::Series s(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) s.at(r, c) = lo + (hi - lo) * rng.next_double();
    return s;
}

inline rankcp::Series gather_rows(const rankcp::PointsView& view,
                                  const std::vector<std::size_t>& indices) {
    rankcp::Series out(indices.size(), view.dim);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto p = view.point(indices[i]);
        for (std::size_t c = 0; c < view.dim; ++c) out.at(i, c) = p[c];
    }
    return out;
}

/// Independent straight-loop evaluation of the energy divergence,
/// kept deliberately naive as the oracle for the production code.
inline double naive_energy(const rankcp::Series& a, const rankcp::Series& b, double alpha,
                           bool ustat) {
    auto dist = [&](const rankcp::Series& s, std::size_t i, const rankcp::Series& t,
                    std::size_t j) {
        double sq = 0.0;
        for (std::size_t c = 0; c < s.cols(); ++c) {
            const double diff = s.at(i, c) - t.at(j, c);
            sq += diff * diff;
        }
        return std::pow(std::sqrt(sq), alpha);
    };
    const double m = static_cast<double>(a.rows());
    const double n = static_cast<double>(b.rows());
    double cross = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) cross += dist(a, i, b, j);
    double within_a = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = i + 1; k < a.rows(); ++k) within_a += dist(a, i, a, k);
    double within_b = 0.0;
    for (std::size_t j = 0; j < b.rows(); ++j)
        for (std::size_t k = j + 1; k < b.rows(); ++k) within_b += dist(b, j, b, k);
    if (ustat)
        return 2.0 * cross / (m * n) - within_a / (0.5 * m * (m - 1.0)) -
               within_b / (0.5 * n * (n - 1.0));
    return 2.0 * cross / (m * n) - 2.0 * within_a / (m * m) - 2.0 * within_b / (n * n);
}

/// Rows of a view sorted lexicographically, for multiset comparisons.
inline std::vector<std::vector<double>> sorted_rows(const rankcp::PointsView& view) {
    std::vector<std::vector<double>> rows;
    rows.reserve(view.count);
    for (std::size_t i = 0; i < view.count; ++i) {
        const auto p = view.point(i);
        rows.emplace_back(p.begin(), p.end());
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

} // namespace testutil
