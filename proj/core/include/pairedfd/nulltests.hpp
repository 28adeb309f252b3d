#pragma once

// Univariate null inference on per-subject scores: the exact binomial sign
// test and the Wilcoxon signed rank test.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "pairedfd/summaries.hpp"

namespace pairedfd {

enum class Alternative { TwoSided, Less, Greater };
enum class PValueMethod { Exact, NormalApprox };

struct TestReport {
    std::string statistic_name;
    double observed = 0.0;  // U (sign test) or W+ (signed rank test)
    double null_mean = 0.0;
    double p_value = 1.0;
    PValueMethod method = PValueMethod::Exact;
    std::size_t n_effective = 0;
    std::size_t n_zero_scores = 0;
    Alternative alternative = Alternative::TwoSided;
    /// Fraction of exactly-zero difference entries, when known. Recorded only.
    double difference_zero_fraction = 0.0;

    /// observed - null_mean: the centred form (1/2) sum sign * rank for W.
    double centered() const noexcept { return observed - null_mean; }
};

/// Exact null distribution of W+ for n untied, nonzero observations.
class WilcoxonNull {
public:
    static constexpr int kMaxN = 1000;

    /// Builds the pmf by the generating-function recursion. Throws SizeError.
    explicit WilcoxonNull(int n);

    /// Shared immutable table; thread-safe.
    static std::shared_ptr<const WilcoxonNull> cached(int n);

    int n() const noexcept { return n_; }
    int max_statistic() const noexcept { return max_w_; }
    const std::vector<double>& pmf() const noexcept { return pmf_; }

    double cdf(int w) const noexcept;       // P(W+ <= w)
    double upper_tail(int w) const noexcept;  // P(W+ >= w)

    double mean() const;
    double variance() const;

private:
    int n_;
    int max_w_;
    std::vector<double> pmf_;
    std::vector<double> lower_;  // running P(W+ <= w)
};

/// Two-sided exact binomial p-value for k successes out of n at p = 1/2.
double binom_two_sided_p(long k, long n);
/// P(X <= k) for X ~ Binomial(n, 1/2), summed in log space.
double binom_lower_tail(long k, long n);
/// P(X >= k).
double binom_upper_tail(long k, long n);

TestReport sign_test(const SubjectScores& scores, Alternative alt = Alternative::TwoSided);

TestReport signed_rank_test(const SubjectScores& scores,
                            Alternative alt = Alternative::TwoSided);

/// Normal approximation to W+ with continuity correction 0.5; `tie_sum` is
/// sum(t^3 - t) over tie groups of |scores|.
double wilcoxon_normal_p(double w_plus, std::size_t n, double tie_sum, Alternative alt);

/// Largest n_effective for which the exact (untied) distribution is used.
inline constexpr std::size_t kExactWilcoxonLimit = 200;

std::string to_string(Alternative alt);
std::string to_string(PValueMethod m);
Alternative parse_alternative(const std::string& text);

}  // namespace pairedfd
