#pragma once

#include <pairedfd/fda.hpp>

#include <random>
#include <vector>

namespace testing_support {

using Rows = std::vector<std::vector<double>>;

/// n x S normal matrix; when `zero_prob` > 0 some entries are exactly 0 and
/// when `tie_prob` > 0 some entries copy a neighbour's magnitude.
inline Rows random_rows(std::mt19937_64& gen, std::size_t n, std::size_t s, double zero_prob = 0.0,
                        double tie_prob = 0.0) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    Rows rows(n, std::vector<double>(s));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < s; ++k) {
            double v = normal(gen);
            if (unit(gen) < zero_prob) v = 0.0;
            if (i > 0 && unit(gen) < tie_prob) v = (unit(gen) < 0.5 ? -1.0 : 1.0) * std::abs(rows[i - 1][k]);
            rows[i][k] = v;
        }
    }
    return rows;
}

inline pairedfd::Matrix to_matrix(const Rows& rows) {
    pairedfd::Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
    }
    return m;
}

inline pairedfd::DifferenceSample to_difference(const Rows& rows) {
    return {pairedfd::Grid::uniform(rows[0].size()), to_matrix(rows)};
}

inline Rows scaled(Rows rows, double c) {
    for (auto& r : rows) {
        for (double& v : r) v *= c;
    }
    return rows;
}

}  // namespace testing_support
