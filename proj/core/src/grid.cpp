#include "rankcp/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace rankcp {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

} // namespace

std::vector<std::uint64_t> first_primes(std::size_t count) {
    std::vector<std::uint64_t> primes;
    primes.reserve(count);
    for (std::uint64_t candidate = 2; primes.size() < count; ++candidate)
        if (is_prime(candidate)) primes.push_back(candidate);
    return primes;
}

double radical_inverse(std::uint64_t index, std::uint64_t base) {
    if (index == 0)
        throw std::invalid_argument("radical_inverse: index must be >= 1 (0 maps to the origin)");
    if (base < 2) throw std::invalid_argument("radical_inverse: base must be >= 2");
    const double inv = 1.0 / static_cast<double>(base);
    double scale = inv;
    double value = 0.0;
    for (std::uint64_t n = index; n != 0; n /= base) {
        value += static_cast<double>(n % base) * scale;
        scale *= inv;
    }
    return value;
}

UnitGrid halton_grid(std::size_t n, std::size_t d) {
    if (n == 0) throw std::invalid_argument("halton_grid: n must be >= 1");
    if (d < 2) throw std::invalid_argument("halton_grid: d must be >= 2; use unit_grid_1d for d = 1");
    const auto bases = first_primes(d);
    UnitGrid grid;
    grid.dim = d;
    grid.kind = GridKind::halton;
    grid.points.reserve(n * d);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            grid.points.push_back(radical_inverse(i, bases[j]));
    return grid;
}

UnitGrid unit_grid_1d(std::size_t n) {
    if (n == 0) throw std::invalid_argument("unit_grid_1d: n must be >= 1");
    UnitGrid grid;
    grid.dim = 1;
    grid.kind = GridKind::uniform1d;
    grid.points.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        grid.points.push_back(static_cast<double>(i) / static_cast<double>(n));
    return grid;
}

UnitGrid torus_grid(std::size_t n, std::size_t d) {
    if (n == 0) throw std::invalid_argument("torus_grid: n must be >= 1");
    if (d == 0) throw std::invalid_argument("torus_grid: d must be >= 1");
    const auto primes = first_primes(d);
    std::vector<double> roots(d);
    for (std::size_t j = 0; j < d; ++j) roots[j] = std::sqrt(static_cast<double>(primes[j]));
    UnitGrid grid;
    grid.dim = d;
    grid.kind = GridKind::torus;
    grid.points.reserve(n * d);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double x = static_cast<double>(i) * roots[j];
            grid.points.push_back(x - std::floor(x));
        }
    }
    return grid;
}

UnitGrid make_grid(std::size_t n, std::size_t d, GridChoice choice) {
    if (choice == GridChoice::torus) return torus_grid(n, d);
    return d == 1 ? unit_grid_1d(n) : halton_grid(n, d);
}

} // namespace rankcp
