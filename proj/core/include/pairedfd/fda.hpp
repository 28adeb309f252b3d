#pragma once

// Paired functional samples on a shared finite grid.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pairedfd {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }

    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Strictly increasing, finite sampling locations (at least two).
class Grid {
public:
    explicit Grid(std::vector<double> points);

    /// S points evenly spaced on [lo, hi], endpoints included.
    static Grid uniform(std::size_t size, double lo = 0.0, double hi = 1.0);

    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t k) const noexcept { return points_[k]; }
    std::span<const double> points() const noexcept { return points_; }

    /// Trapezoid quadrature weights, so that integral(v) = sum_k w_k v_k.
    std::vector<double> trapezoid_weights() const;

    double mean_spacing() const noexcept {
        return (points_.back() - points_.front()) / static_cast<double>(points_.size() - 1);
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::vector<double> points_;
};

/// A measurement cell; nullopt marks a missing observation.
using Cell = std::optional<double>;

/// n curves observed on a shared grid; cells may be missing.
class FunctionalSample {
public:
    FunctionalSample(Grid grid, std::vector<std::vector<Cell>> rows,
                     std::vector<std::string> subject_ids = {});

    /// Fully observed sample from a dense matrix (rows = subjects).
    static FunctionalSample from_matrix(Grid grid, const Matrix& values,
                                        std::vector<std::string> subject_ids = {});

    const Grid& grid() const noexcept { return grid_; }
    std::size_t subjects() const noexcept { return rows_.size(); }
    const Cell& at(std::size_t i, std::size_t k) const noexcept { return rows_[i][k]; }
    std::span<const Cell> row(std::size_t i) const noexcept { return rows_[i]; }
    const std::vector<std::string>& subject_ids() const noexcept { return ids_; }

    bool has_missing() const noexcept;
    std::size_t missing_count() const noexcept;

    /// Dense values; throws PreprocessRequired if any cell is missing.
    Matrix to_matrix() const;

    friend bool operator==(const FunctionalSample&, const FunctionalSample&) = default;

private:
    Grid grid_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::string> ids_;
};

/// Two conditions measured on the same subjects, paired by position.
class PairedSample {
public:
    PairedSample(FunctionalSample condition0, FunctionalSample condition1);

    const FunctionalSample& condition0() const noexcept { return c0_; }
    const FunctionalSample& condition1() const noexcept { return c1_; }
    const Grid& grid() const noexcept { return c0_.grid(); }
    std::size_t subjects() const noexcept { return c0_.subjects(); }

    PairedSample swapped() const { return PairedSample(c1_, c0_); }

    friend bool operator==(const PairedSample&, const PairedSample&) = default;

private:
    FunctionalSample c0_;
    FunctionalSample c1_;
};

/// Fully observed difference curves d_i(s) = x_i1(s) - x_i0(s).
class DifferenceSample {
public:
    DifferenceSample(Grid grid, Matrix d);

    const Grid& grid() const noexcept { return grid_; }
    const Matrix& values() const noexcept { return d_; }
    std::size_t subjects() const noexcept { return d_.rows(); }
    std::size_t points() const noexcept { return d_.cols(); }

    /// Fraction of entries exactly equal to zero.
    double zero_fraction() const noexcept;

    DifferenceSample negated() const;

private:
    Grid grid_;
    Matrix d_;
};

DifferenceSample difference(const PairedSample& paired);

double trapezoid(std::span<const double> values, const Grid& grid);

}  // namespace pairedfd
