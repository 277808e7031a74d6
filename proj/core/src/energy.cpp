#include "rankcp/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "rankcp/ranks.hpp"

namespace rankcp {

namespace {

double alpha_distance(const double* p, const double* q, std::size_t dim, double alpha) {
    double sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const double diff = p[k] - q[k];
        sq += diff * diff;
    }
    if (alpha == 1.0) return std::sqrt(sq);
    if (alpha == 2.0) return sq;
    return std::pow(sq, 0.5 * alpha);
}

double cross_sum(const PointsView& a, const PointsView& b, double alpha) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.count; ++i)
        for (std::size_t j = 0; j < b.count; ++j)
            total += alpha_distance(a.data + i * a.dim, b.data + j * b.dim, a.dim, alpha);
    return total;
}

double within_sum(const PointsView& a, double alpha) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.count; ++i)
        for (std::size_t k = i + 1; k < a.count; ++k)
            total += alpha_distance(a.data + i * a.dim, a.data + k * a.dim, a.dim, alpha);
    return total;
}

} // namespace

void EnergyConfig::validate() const {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::invalid_argument("EnergyConfig: alpha must lie in (0, 2]");
}

double pairwise_energy(const PointsView& a, const PointsView& b, const EnergyConfig& cfg) {
    cfg.validate();
    if (a.dim != b.dim) throw std::invalid_argument("pairwise_energy: dimension mismatch");
    const std::size_t m = a.count;
    const std::size_t n = b.count;
    if (cfg.variant == EnergyVariant::ustat) {
        if (m < 2 || n < 2)
            throw std::invalid_argument("pairwise_energy: ustat needs at least 2 points per side");
    } else if (m < 1 || n < 1) {
        throw std::invalid_argument("pairwise_energy: empty point set");
    }

    const double between = 2.0 * cross_sum(a, b, cfg.alpha) / (static_cast<double>(m) * static_cast<double>(n));
    double within_a = within_sum(a, cfg.alpha);
    double within_b = within_sum(b, cfg.alpha);
    if (cfg.variant == EnergyVariant::ustat) {
        within_a /= 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
        within_b /= 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    } else {
        // All ordered pairs: twice the unordered sum over n^2.
        within_a *= 2.0 / (static_cast<double>(m) * static_cast<double>(m));
        within_b *= 2.0 / (static_cast<double>(n) * static_cast<double>(n));
    }
    return between - within_a - within_b;
}

double rank_energy(const PointsView& sample, std::size_t tau, const UnitGrid& grid,
                   const EnergyConfig& cfg) {
    cfg.validate();
    const std::size_t n = sample.count;
    if (sample.dim != grid.dim)
        throw std::invalid_argument("rank_energy: sample and grid dimensions differ");
    if (n != grid.size())
        throw std::invalid_argument("rank_energy: pooled size and grid size differ");
    const std::size_t lo = cfg.variant == EnergyVariant::ustat ? 2 : 1;
    if (tau < lo || tau + lo > n)
        throw std::invalid_argument("rank_energy: tau leaves too few points on one side");

    if (all_points_identical(sample)) return 0.0;

    const RankMap map = compute_rank_map(sample, grid);
    return pairwise_energy(map.rows_view(0, tau), map.rows_view(tau, n), cfg);
}

double scaled_divergence(std::size_t m, std::size_t n, double e_value) {
    const double dm = static_cast<double>(m);
    const double dn = static_cast<double>(n);
    return dm * dn / (dm + dn) * e_value;
}

} // namespace rankcp
