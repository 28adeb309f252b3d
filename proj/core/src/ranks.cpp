#include "pairedfd/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pairedfd/error.hpp"

namespace pairedfd {

std::vector<double> midrank(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) throw DegenerateSample("midrank of an empty vector");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && values[order[end]] == values[order[start]]) ++end;
        // positions start+1 .. end share their average
        const double shared = 0.5 * static_cast<double>(start + 1 + end);
        for (std::size_t j = start; j < end; ++j) ranks[order[j]] = shared;
        start = end;
    }
    return ranks;
}

std::vector<int> sign_curve(std::span<const double> d_row) {
    std::vector<int> out(d_row.size());
    std::transform(d_row.begin(), d_row.end(), out.begin(), sign_of);
    return out;
}

SignedRankField signed_rank_field(const DifferenceSample& d) {
    const std::size_t n = d.subjects();
    const std::size_t s = d.points();
    if (n < 2) throw DegenerateSample("signed rank field needs at least 2 subjects");

    SignedRankField field;
    field.subjects = n;
    field.points = s;
    field.signs.resize(n * s);
    field.absranks = Matrix(n, s);

    const Matrix& v = d.values();
    std::vector<double> column(n);
    for (std::size_t k = 0; k < s; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            column[i] = std::fabs(v(i, k));
            field.signs[i * s + k] = static_cast<std::int8_t>(sign_of(v(i, k)));
        }
        const auto r = midrank(column);
        for (std::size_t i = 0; i < n; ++i) field.absranks(i, k) = r[i];
    }
    return field;
}

}  // namespace pairedfd
