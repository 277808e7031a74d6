#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankcp/series.hpp"

namespace rankcp {

enum class GridKind { halton, torus, uniform1d };

/// Which low-discrepancy family backs the rank grid. `halton` selects the
/// d-dimensional Halton sequence for d >= 2 and the uniform lattice
/// {i/n : 1 <= i <= n} for d = 1; `torus` selects the Kronecker/Weyl
/// sequence in every dimension.
enum class GridChoice { halton, torus };

/// An ordered list of N distinct points in (0,1]^d used as fixed rank
/// targets. Points are stored row-major.
struct UnitGrid {
    std::vector<double> points; // n * dim, row-major
    std::size_t dim = 0;
    GridKind kind = GridKind::halton;

    std::size_t size() const { return dim == 0 ? 0 : points.size() / dim; }
    std::span<const double> point(std::size_t i) const { return {points.data() + i * dim, dim}; }
    PointsView view() const { return {points.data(), size(), dim}; }
};

/// Base-b digit reversal of a positive index: sum d_k b^{-(k+1)} where
/// index = sum d_k b^k. Index 0 is rejected, it would map to the origin.
double radical_inverse(std::uint64_t index, std::uint64_t base);

/// First n points of the d-dimensional Halton sequence (d >= 2), bases
/// the first d primes, indices starting at 1.
UnitGrid halton_grid(std::size_t n, std::size_t d);

/// The 1-D lattice (1/n, 2/n, ..., n/n), strictly increasing.
UnitGrid unit_grid_1d(std::size_t n);

/// Kronecker/Weyl sequence: point i has coordinates frac(i * sqrt(p_j))
/// for the first d primes p_j.
UnitGrid torus_grid(std::size_t n, std::size_t d);

/// Grid used for a pooled sample of size n in dimension d under the
/// given family choice.
UnitGrid make_grid(std::size_t n, std::size_t d, GridChoice choice);

/// First count primes (2, 3, 5, ...).
std::vector<std::uint64_t> first_primes(std::size_t count);

} // namespace rankcp
