#pragma once

#include <cstddef>

#include "rankcp/grid.hpp"
#include "rankcp/series.hpp"

namespace rankcp {

/// Within-sample normalization of the energy statistic: `ustat` averages
/// over unordered distinct pairs (C(n,2)), `vstat` over all ordered
/// pairs (n^2). The u-statistic may be negative; the v-statistic is
/// non-negative for alpha in (0, 2].
enum class EnergyVariant { ustat, vstat };

struct EnergyConfig {
    double alpha = 1.0;
    EnergyVariant variant = EnergyVariant::ustat;

    /// Throws std::invalid_argument unless alpha lies in (0, 2]. At
    /// alpha = 2 the statistic reduces to a first-moment comparison.
    void validate() const;
};

/// Energy divergence between two point sets:
///   2/(|A||B|) sum |a-b|^alpha  -  within(A)  -  within(B)
/// with the within-sample averages chosen by cfg.variant. Sizes must be
/// >= 2 per side for ustat, >= 1 for vstat.
double pairwise_energy(const PointsView& a, const PointsView& b, const EnergyConfig& cfg);

/// Energy divergence of the pooled sample split at tau, computed on
/// ranks: transports all N points onto the grid once, then compares the
/// first tau rank vectors against the remaining N - tau. A pooled
/// sample whose points are all identical has divergence 0 by definition
/// (the transport tie-break carries no information).
double rank_energy(const PointsView& sample, std::size_t tau, const UnitGrid& grid,
                   const EnergyConfig& cfg);

/// Sample-size scaling m*n/(m+n) that turns the divergence into the
/// statistic maximized over candidate split points.
double scaled_divergence(std::size_t m, std::size_t n, double e_value);

} // namespace rankcp
