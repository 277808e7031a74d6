#include "rankcp/series.hpp"

#include <algorithm>
#include <numeric>

namespace rankcp {

bool all_points_identical(const PointsView& points) {
    if (points.count < 2) return true;
    const auto first = points.point(0);
    for (std::size_t i = 1; i < points.count; ++i) {
        const auto p = points.point(i);
        if (!std::equal(p.begin(), p.end(), first.begin())) return false;
    }
    return true;
}

bool has_duplicate_rows(const Series& series) {
    const std::size_t n = series.rows();
    if (n < 2) return false;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto row_less = [&](std::size_t a, std::size_t b) {
        const auto ra = series.row(a);
        const auto rb = series.row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    };
    std::sort(order.begin(), order.end(), row_less);
    for (std::size_t i = 1; i < n; ++i) {
        const auto a = series.row(order[i - 1]);
        const auto b = series.row(order[i]);
        if (std::equal(a.begin(), a.end(), b.begin())) return true;
    }
    return false;
}

} // namespace rankcp
