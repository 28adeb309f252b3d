#include "pairedfd/fda.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pairedfd/error.hpp"

namespace pairedfd {

namespace {

std::vector<std::string> default_ids(std::size_t n) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i + 1));
    return ids;
}

}  // namespace

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw DegenerateGrid("grid needs at least 2 points, got " + std::to_string(points_.size()));
    }
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (!std::isfinite(points_[k])) {
            throw DegenerateGrid("grid point " + std::to_string(k) + " is not finite");
        }
        if (k > 0 && !(points_[k] > points_[k - 1])) {
            throw DegenerateGrid("grid is not strictly increasing at index " + std::to_string(k));
        }
    }
}

Grid Grid::uniform(std::size_t size, double lo, double hi) {
    if (size < 2) throw DegenerateGrid("uniform grid needs at least 2 points");
    std::vector<double> pts(size);
    const double step = (hi - lo) / static_cast<double>(size - 1);
    for (std::size_t k = 0; k < size; ++k) pts[k] = lo + step * static_cast<double>(k);
    pts.back() = hi;
    return Grid(std::move(pts));
}

std::vector<double> Grid::trapezoid_weights() const {
    const std::size_t s = points_.size();
    std::vector<double> w(s, 0.0);
    for (std::size_t k = 0; k + 1 < s; ++k) {
        const double half = 0.5 * (points_[k + 1] - points_[k]);
        w[k] += half;
        w[k + 1] += half;
    }
    return w;
}

FunctionalSample::FunctionalSample(Grid grid, std::vector<std::vector<Cell>> rows,
                                   std::vector<std::string> subject_ids)
    : grid_(std::move(grid)), rows_(std::move(rows)), ids_(std::move(subject_ids)) {
    if (rows_.empty()) throw DimensionError("functional sample needs at least one subject");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].size() != grid_.size()) {
            throw DimensionError("subject row " + std::to_string(i) + " has " +
                                 std::to_string(rows_[i].size()) + " values, grid has " +
                                 std::to_string(grid_.size()));
        }
        for (const Cell& c : rows_[i]) {
            if (c && !std::isfinite(*c)) {
                throw DimensionError("non-finite value in subject row " + std::to_string(i));
            }
        }
    }
    if (ids_.empty()) ids_ = default_ids(rows_.size());
    if (ids_.size() != rows_.size()) {
        throw DimensionError("subject id count does not match row count");
    }
}

FunctionalSample FunctionalSample::from_matrix(Grid grid, const Matrix& values,
                                               std::vector<std::string> subject_ids) {
    std::vector<std::vector<Cell>> rows(values.rows());
    for (std::size_t i = 0; i < values.rows(); ++i) {
        rows[i].assign(values.row(i).begin(), values.row(i).end());
    }
    return FunctionalSample(std::move(grid), std::move(rows), std::move(subject_ids));
}

bool FunctionalSample::has_missing() const noexcept { return missing_count() > 0; }

std::size_t FunctionalSample::missing_count() const noexcept {
    std::size_t count = 0;
    for (const auto& r : rows_) {
        count += static_cast<std::size_t>(std::count(r.begin(), r.end(), std::nullopt));
    }
    return count;
}

Matrix FunctionalSample::to_matrix() const {
    Matrix m(rows_.size(), grid_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t k = 0; k < grid_.size(); ++k) {
            if (!rows_[i][k]) {
                throw PreprocessRequired("missing value for subject " + ids_[i] +
                                         " at grid point " + std::to_string(k) + " (s = " +
                                         std::to_string(grid_[k]) + ")");
            }
            m(i, k) = *rows_[i][k];
        }
    }
    return m;
}

PairedSample::PairedSample(FunctionalSample condition0, FunctionalSample condition1)
    : c0_(std::move(condition0)), c1_(std::move(condition1)) {
    if (!(c0_.grid() == c1_.grid())) throw PairingError("conditions are on different grids");
    if (c0_.subjects() != c1_.subjects()) {
        throw PairingError("conditions have different subject counts (" +
                           std::to_string(c0_.subjects()) + " vs " +
                           std::to_string(c1_.subjects()) + ")");
    }
    for (std::size_t i = 0; i < c0_.subjects(); ++i) {
        if (c0_.subject_ids()[i] != c1_.subject_ids()[i]) {
            throw PairingError("subject mismatch at position " + std::to_string(i) + ": '" +
                               c0_.subject_ids()[i] + "' vs '" + c1_.subject_ids()[i] + "'");
        }
    }
}

DifferenceSample::DifferenceSample(Grid grid, Matrix d) : grid_(std::move(grid)), d_(std::move(d)) {
    if (d_.cols() != grid_.size()) {
        throw DimensionError("difference matrix has " + std::to_string(d_.cols()) +
                             " columns, grid has " + std::to_string(grid_.size()));
    }
    if (d_.rows() == 0) throw DimensionError("difference sample has no subjects");
    for (double v : d_.data()) {
        if (!std::isfinite(v)) throw DimensionError("difference sample has a non-finite entry");
    }
}

double DifferenceSample::zero_fraction() const noexcept {
    const auto values = d_.data();
    const auto zeros = std::count(values.begin(), values.end(), 0.0);
    return static_cast<double>(zeros) / static_cast<double>(values.size());
}

DifferenceSample DifferenceSample::negated() const {
    Matrix m(d_.rows(), d_.cols());
    for (std::size_t i = 0; i < d_.rows(); ++i) {
        for (std::size_t k = 0; k < d_.cols(); ++k) m(i, k) = -d_(i, k);
    }
    return DifferenceSample(grid_, std::move(m));
}

DifferenceSample difference(const PairedSample& paired) {
    const auto& x0 = paired.condition0();
    const auto& x1 = paired.condition1();
    Matrix d(paired.subjects(), paired.grid().size());
    for (std::size_t i = 0; i < paired.subjects(); ++i) {
        for (std::size_t k = 0; k < paired.grid().size(); ++k) {
            const Cell& a = x0.at(i, k);
            const Cell& b = x1.at(i, k);
            if (!a || !b) {
                throw PreprocessRequired("missing value for subject " + x0.subject_ids()[i] +
                                         " (condition " + (a ? "1" : "0") + ") at grid point " +
                                         std::to_string(k) + "; preprocess before differencing");
            }
            d(i, k) = *b - *a;
        }
    }
    return DifferenceSample(paired.grid(), std::move(d));
}

double trapezoid(std::span<const double> values, const Grid& grid) {
    if (values.size() != grid.size()) {
        throw DimensionError("trapezoid: " + std::to_string(values.size()) +
                             " values for a grid of " + std::to_string(grid.size()));
    }
    if (grid.size() < 2) throw DegenerateGrid("trapezoid needs at least 2 grid points");
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        total += (grid[k + 1] - grid[k]) * (values[k] + values[k + 1]) * 0.5;
    }
    return total;
}

}  // namespace pairedfd
