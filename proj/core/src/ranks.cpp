#include "rankcp/ranks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rankcp {

namespace {

bool contains_duplicates(const PointsView& sample) {
    const std::size_t n = sample.count;
    if (n < 2) return false;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        const auto pa = sample.point(a);
        const auto pb = sample.point(b);
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t i = 1; i < n; ++i) {
        const auto a = sample.point(order[i - 1]);
        const auto b = sample.point(order[i]);
        if (std::equal(a.begin(), a.end(), b.begin())) return true;
    }
    return false;
}

} // namespace

CostMatrix cost_matrix(const PointsView& sample, const UnitGrid& grid) {
    if (sample.dim != grid.dim)
        throw std::invalid_argument("cost_matrix: sample and grid dimensions differ");
    if (sample.count != grid.size())
        throw std::invalid_argument("cost_matrix: sample and grid sizes differ");
    const std::size_t n = sample.count;
    const std::size_t d = sample.dim;
    CostMatrix cost(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = sample.data + i * d;
        for (std::size_t j = 0; j < n; ++j) {
            const double* g = grid.points.data() + j * d;
            double sq = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = p[k] - g[k];
                sq += diff * diff;
            }
            cost.at(i, j) = sq;
        }
    }
    return cost;
}

RankMap compute_rank_map(const PointsView& sample, const UnitGrid& grid) {
    const Assignment assignment = solve_lsap(cost_matrix(sample, grid));
    RankMap map;
    map.grid = grid;
    map.perm = assignment.perm;
    map.tied_points = contains_duplicates(sample);
    const std::size_t d = grid.dim;
    map.ranks.resize(sample.count * d);
    for (std::size_t i = 0; i < sample.count; ++i) {
        const auto g = grid.point(assignment.perm[i]);
        std::copy(g.begin(), g.end(), map.ranks.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
    return map;
}

} // namespace rankcp
