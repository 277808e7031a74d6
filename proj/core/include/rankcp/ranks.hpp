#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rankcp/assignment.hpp"
#include "rankcp/grid.hpp"
#include "rankcp/series.hpp"

namespace rankcp {

/// The empirical rank map of a pooled sample: ranks[i] is the grid point
/// assigned to sample point i by the minimum-cost transport, so the rows
/// of `ranks` are a permutation of the grid.
struct RankMap {
    std::vector<double> ranks; // n * dim, row-major
    std::vector<std::size_t> perm; // ranks row i == grid point perm[i]
    UnitGrid grid;
    bool tied_points = false; // the pooled sample contained duplicates

    std::size_t size() const { return perm.size(); }
    std::size_t dim() const { return grid.dim; }
    std::span<const double> rank(std::size_t i) const { return {ranks.data() + i * dim(), dim()}; }
    PointsView view() const { return {ranks.data(), size(), dim()}; }
    PointsView rows_view(std::size_t first, std::size_t last) const {
        return {ranks.data() + first * dim(), last - first, dim()};
    }
};

/// Squared Euclidean distances between every sample point and every grid
/// point: entries[i][j] = |points[i] - grid[j]|^2.
CostMatrix cost_matrix(const PointsView& sample, const UnitGrid& grid);

/// Transport the pooled sample onto the grid by an exact LSAP solve and
/// read the assigned grid points back as multivariate ranks.
RankMap compute_rank_map(const PointsView& sample, const UnitGrid& grid);

} // namespace rankcp
