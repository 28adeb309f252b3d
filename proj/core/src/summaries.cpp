#include "pairedfd/summaries.hpp"

#include <cmath>

#include "pairedfd/error.hpp"

namespace pairedfd {

namespace {

double weight_for(const SignWeights& w, int sign) noexcept {
    return w[static_cast<std::size_t>(sign + 1)];
}

void require_finite(const SignWeights& w) {
    for (double x : w) {
        if (!std::isfinite(x)) throw DimensionError("sign weights must be finite");
    }
}

}  // namespace

SubjectScores t_sign_suff(const DifferenceSample& d) {
    SubjectScores out{std::vector<double>(d.subjects(), 0.0), StatisticKind::SignSufficient, {}};
    const Matrix& v = d.values();
    for (std::size_t i = 0; i < d.subjects(); ++i) {
        long total = 0;
        for (double x : v.row(i)) total += sign_of(x);
        out.scores[i] = static_cast<double>(total);
    }
    return out;
}

SubjectScores t_sign_cat(const DifferenceSample& d, const SignWeights& w) {
    require_finite(w);
    SubjectScores out{std::vector<double>(d.subjects(), 0.0), StatisticKind::SignCategorical, w};
    const Matrix& v = d.values();
    for (std::size_t i = 0; i < d.subjects(); ++i) {
        std::array<long, 3> counts{0, 0, 0};
        for (double x : v.row(i)) ++counts[static_cast<std::size_t>(sign_of(x) + 1)];
        out.scores[i] = w[0] * static_cast<double>(counts[0]) +
                        w[1] * static_cast<double>(counts[1]) +
                        w[2] * static_cast<double>(counts[2]);
    }
    return out;
}

SubjectScores t_integral(const DifferenceSample& d) {
    SubjectScores out{std::vector<double>(d.subjects(), 0.0), StatisticKind::SignIntegral, {}};
    for (std::size_t i = 0; i < d.subjects(); ++i) {
        out.scores[i] = trapezoid(d.values().row(i), d.grid());
    }
    return out;
}

SubjectScores t_sdrt(const SignedRankField& field, std::optional<SignWeights> w) {
    const SignWeights weights = w.value_or(kSupportWeights);
    require_finite(weights);
    SubjectScores out{std::vector<double>(field.subjects, 0.0),
                      w ? StatisticKind::SdrtWeighted : StatisticKind::Sdrt, weights};
    const double inv_s = 1.0 / static_cast<double>(field.points);
    for (std::size_t i = 0; i < field.subjects; ++i) {
        double total = 0.0;
        for (std::size_t k = 0; k < field.points; ++k) {
            total += weight_for(weights, field.sign(i, k)) * field.absranks(i, k);
        }
        out.scores[i] = total * inv_s;
    }
    return out;
}

}  // namespace pairedfd
