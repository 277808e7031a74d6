#include "rankcp/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rankcp {

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(rows.size()) {
    entries_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_)
            throw std::invalid_argument("CostMatrix: matrix must be square");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

void CostMatrix::validate() const {
    if (n_ == 0) throw std::invalid_argument("CostMatrix: empty matrix");
    for (const double c : entries_) {
        if (!std::isfinite(c)) throw std::invalid_argument("CostMatrix: non-finite entry");
        if (c < 0.0) throw std::invalid_argument("CostMatrix: negative entry");
    }
}

namespace {

double permutation_cost(const CostMatrix& cost, const std::vector<std::size_t>& perm) {
    double total = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) total += cost.at(i, perm[i]);
    return total;
}

} // namespace

Assignment solve_lsap(const CostMatrix& cost) {
    cost.validate();
    const std::size_t n = cost.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    // Dual potentials and column -> row matching, 1-based with column 0
    // as the virtual root of each augmenting search.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0);
    std::vector<std::size_t> path(n + 1, 0);

    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t j0 = 0;
        std::vector<double> min_slack(n + 1, inf);
        std::vector<bool> visited(n + 1, false);
        do {
            visited[j0] = true;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (visited[j]) continue;
                const double reduced = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (reduced < min_slack[j]) {
                    min_slack[j] = reduced;
                    path[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (visited[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        // Augment along the alternating path back to the root.
        do {
            const std::size_t j1 = path[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment result;
    result.perm.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) result.perm[match[j] - 1] = j - 1;
    result.total_cost = permutation_cost(cost, result.perm);
    return result;
}

Assignment lsap_bruteforce(const CostMatrix& cost) {
    cost.validate();
    const std::size_t n = cost.size();
    if (n > 9) throw std::invalid_argument("lsap_bruteforce: n > 9 (factorial enumeration)");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Assignment best{perm, permutation_cost(cost, perm)};
    while (std::next_permutation(perm.begin(), perm.end())) {
        const double total = permutation_cost(cost, perm);
        if (total < best.total_cost) {
            best.perm = perm;
            best.total_cost = total;
        }
    }
    return best;
}

} // namespace rankcp
