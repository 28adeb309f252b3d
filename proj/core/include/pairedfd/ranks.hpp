#pragma once

// Per-gridpoint signing and ranking across subjects.

#include <cstdint>
#include <span>
#include <vector>

#include "pairedfd/fda.hpp"

namespace pairedfd {

/// Signs of d and midranks of |d| taken down each grid column.
struct SignedRankField {
    std::size_t subjects = 0;
    std::size_t points = 0;
    std::vector<std::int8_t> signs;  // row-major n x S, entries in {-1, 0, +1}
    Matrix absranks;                 // midranks of |d[.][k]| within column k

    int sign(std::size_t i, std::size_t k) const noexcept { return signs[i * points + k]; }
};

/// Midranks of `values`; tied values share the mean of the positions they occupy.
std::vector<double> midrank(std::span<const double> values);

inline int sign_of(double x) noexcept { return (x > 0.0) - (x < 0.0); }

std::vector<int> sign_curve(std::span<const double> d_row);

SignedRankField signed_rank_field(const DifferenceSample& d);

}  // namespace pairedfd
