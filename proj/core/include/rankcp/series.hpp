#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rankcp {

/// Non-owning view over a contiguous block of points (rows of a series,
/// a slice of a rank map, ...). Row-major: point i occupies
/// [data + i*dim, data + (i+1)*dim).
struct PointsView {
    const double* data = nullptr;
    std::size_t count = 0;
    std::size_t dim = 0;

    std::span<const double> point(std::size_t i) const { return {data + i * dim, dim}; }
    bool empty() const { return count == 0; }
};

/// A T x d matrix of time-ordered observations, row-major.
class Series {
public:
    Series() = default;

    Series(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
        if (cols == 0) throw std::invalid_argument("Series: dimension must be positive");
    }

    Series(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (cols == 0) throw std::invalid_argument("Series: dimension must be positive");
        if (data_.size() != rows * cols)
            throw std::invalid_argument("Series: data size does not match rows x cols");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<double>& data() const { return data_; }

    PointsView view() const { return {data_.data(), rows_, cols_}; }

    /// View over the contiguous row range [first, last).
    PointsView rows_view(std::size_t first, std::size_t last) const {
        return {data_.data() + first * cols_, last - first, cols_};
    }

    /// Copy of the row range [first, last) as a new Series.
    Series slice(std::size_t first, std::size_t last) const {
        Series out(last - first, cols_);
        std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>(last * cols_), out.data_.begin());
        return out;
    }

    bool operator==(const Series&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// True when every point in the view is bitwise identical. A pooled
/// sample with this property carries no distributional signal.
bool all_points_identical(const PointsView& points);

/// True when the series contains at least one pair of identical rows.
/// Ties break the absolute-continuity assumption behind the rank map;
/// callers surface a warning rather than failing.
bool has_duplicate_rows(const Series& series);

} // namespace rankcp
