#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rankcp {

/// Square matrix of non-negative finite transport costs.
class CostMatrix {
public:
    explicit CostMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t size() const { return n_; }

    double& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    const std::vector<double>& entries() const { return entries_; }

    /// Throws std::invalid_argument on empty, non-finite or negative entries.
    void validate() const;

private:
    std::size_t n_;
    std::vector<double> entries_;
};

/// A minimum-cost perfect matching: perm[i] is the column assigned to
/// row i, total_cost the sum of the selected entries.
struct Assignment {
    std::vector<std::size_t> perm;
    double total_cost = 0.0;
};

/// Exact LSAP solver, shortest-augmenting-path (Jonker-Volgenant
/// family), O(n^3) worst case. Rows are augmented and columns scanned
/// in ascending index, so ties among equally optimal assignments
/// resolve deterministically.
Assignment solve_lsap(const CostMatrix& cost);

/// Factorial-enumeration oracle for tests; rejects n > 9.
Assignment lsap_bruteforce(const CostMatrix& cost);

} // namespace rankcp
