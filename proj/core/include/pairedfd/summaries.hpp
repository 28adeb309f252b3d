#pragma once

// Per-subject scalar summaries of difference curves.

#include <array>
#include <optional>
#include <vector>

#include "pairedfd/fda.hpp"
#include "pairedfd/ranks.hpp"

namespace pairedfd {

enum class StatisticKind {
    SignSufficient,   // sum of signs
    SignCategorical,  // weighted Iverson-bracket counts
    SignIntegral,     // trapezoid integral of d_i
    Sdrt,             // mean signed midrank, default weights
    SdrtWeighted,     // mean signed midrank, caller weights
};

/// Weights applied to the sign categories (-1, 0, +1), in that order.
using SignWeights = std::array<double, 3>;

inline constexpr SignWeights kSupportWeights{-1.0, 0.0, 1.0};

struct SubjectScores {
    std::vector<double> scores;
    StatisticKind kind = StatisticKind::SignSufficient;
    std::optional<SignWeights> weights;

    std::size_t size() const noexcept { return scores.size(); }
};

SubjectScores t_sign_suff(const DifferenceSample& d);

SubjectScores t_sign_cat(const DifferenceSample& d, const SignWeights& w);

SubjectScores t_integral(const DifferenceSample& d);

/// (1/S) sum_k w(sign) * absrank. Without weights this is the support weighting
/// (-1, 0, 1), which covers both the zero-free and zero-inflated forms.
SubjectScores t_sdrt(const SignedRankField& field, std::optional<SignWeights> w = std::nullopt);

}  // namespace pairedfd
