#include "pairedfd/nulltests.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "pairedfd/error.hpp"
#include "pairedfd/ranks.hpp"

namespace pairedfd {

namespace {

double log_binom_pmf_half(long k, long n) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0) - static_cast<double>(n) * std::log(2.0);
}

// log-sum-exp of log pmf over [lo, hi]
double binom_range(long lo, long hi, long n) {
    if (lo > hi) return 0.0;
    double peak = -INFINITY;
    for (long j = lo; j <= hi; ++j) peak = std::max(peak, log_binom_pmf_half(j, n));
    double acc = 0.0;
    for (long j = lo; j <= hi; ++j) acc += std::exp(log_binom_pmf_half(j, n) - peak);
    return std::min(1.0, std::exp(peak + std::log(acc)));
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

WilcoxonNull::WilcoxonNull(int n) : n_(n) {
    if (n < 1 || n > kMaxN) {
        throw SizeError("Wilcoxon null size must be in [1, " + std::to_string(kMaxN) + "], got " +
                        std::to_string(n));
    }
    max_w_ = n * (n + 1) / 2;
    pmf_.assign(static_cast<std::size_t>(max_w_) + 1, 0.0);
    pmf_[0] = 1.0;
    int top = 0;
    // pmf <- pmf * (1 + x^r) / 2, updated in place from the top down
    for (int r = 1; r <= n; ++r) {
        top += r;
        for (int w = top; w >= 0; --w) {
            const double shifted = w >= r ? pmf_[static_cast<std::size_t>(w - r)] : 0.0;
            pmf_[static_cast<std::size_t>(w)] = 0.5 * (pmf_[static_cast<std::size_t>(w)] + shifted);
        }
    }
    lower_.resize(pmf_.size());
    double run = 0.0;
    for (std::size_t w = 0; w < pmf_.size(); ++w) {
        run += pmf_[w];
        lower_[w] = run;
    }
}

std::shared_ptr<const WilcoxonNull> WilcoxonNull::cached(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const WilcoxonNull>> tables;
    std::lock_guard lock(mu);
    auto& slot = tables[n];
    if (!slot) slot = std::make_shared<const WilcoxonNull>(n);
    return slot;
}

double WilcoxonNull::cdf(int w) const noexcept {
    if (w < 0) return 0.0;
    if (w >= max_w_) return 1.0;
    return std::min(1.0, lower_[static_cast<std::size_t>(w)]);
}

double WilcoxonNull::upper_tail(int w) const noexcept {
    // symmetry: P(W >= w) = P(W <= max - w), which keeps small tails accurate
    return cdf(max_w_ - w);
}

double WilcoxonNull::mean() const {
    double m = 0.0;
    for (std::size_t w = 0; w < pmf_.size(); ++w) m += static_cast<double>(w) * pmf_[w];
    return m;
}

double WilcoxonNull::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t w = 0; w < pmf_.size(); ++w) {
        const double dev = static_cast<double>(w) - m;
        v += dev * dev * pmf_[w];
    }
    return v;
}

double binom_lower_tail(long k, long n) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    return binom_range(0, k, n);
}

double binom_upper_tail(long k, long n) {
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    return binom_range(k, n, n);
}

double binom_two_sided_p(long k, long n) {
    if (n < 0 || k < 0 || k > n) throw SizeError("binomial test needs 0 <= k <= n");
    return std::min(1.0, 2.0 * std::min(binom_lower_tail(k, n), binom_upper_tail(k, n)));
}

double wilcoxon_normal_p(double w_plus, std::size_t n, double tie_sum, Alternative alt) {
    const double nd = static_cast<double>(n);
    const double variance = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_sum / 48.0;
    if (!(variance > 0.0)) return 1.0;
    const double sd = std::sqrt(variance);
    const double dev = w_plus - nd * (nd + 1.0) / 4.0;
    switch (alt) {
        case Alternative::TwoSided: return std::min(1.0, 2.0 * normal_sf((std::fabs(dev) - 0.5) / sd));
        case Alternative::Greater: return normal_sf((dev - 0.5) / sd);
        case Alternative::Less: return normal_cdf((dev + 0.5) / sd);
    }
    return 1.0;
}

TestReport sign_test(const SubjectScores& scores, Alternative alt) {
    if (scores.size() == 0) throw DegenerateSample("sign test needs at least one score");
    long positive = 0;
    long nonzero = 0;
    for (double x : scores.scores) {
        if (x != 0.0) ++nonzero;
        if (x > 0.0) ++positive;
    }
    if (nonzero == 0) throw AllZeroScores("sign test: every subject score is zero");

    TestReport r;
    r.statistic_name = "U+";
    r.observed = static_cast<double>(positive);
    r.null_mean = 0.5 * static_cast<double>(nonzero);
    r.method = PValueMethod::Exact;
    r.n_effective = static_cast<std::size_t>(nonzero);
    r.n_zero_scores = scores.size() - r.n_effective;
    r.alternative = alt;
    switch (alt) {
        case Alternative::TwoSided: r.p_value = binom_two_sided_p(positive, nonzero); break;
        case Alternative::Greater: r.p_value = binom_upper_tail(positive, nonzero); break;
        case Alternative::Less: r.p_value = binom_lower_tail(positive, nonzero); break;
    }
    return r;
}

TestReport signed_rank_test(const SubjectScores& scores, Alternative alt) {
    if (scores.size() == 0) throw DegenerateSample("signed rank test needs at least one score");

    std::vector<double> kept;
    kept.reserve(scores.size());
    for (double x : scores.scores) {
        if (x != 0.0) kept.push_back(x);
    }
    if (kept.empty()) throw AllZeroScores("signed rank test: every subject score is zero");

    const std::size_t n = kept.size();
    std::vector<double> magnitude(n);
    std::transform(kept.begin(), kept.end(), magnitude.begin(), [](double x) { return std::fabs(x); });
    const auto ranks = midrank(magnitude);

    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (kept[i] > 0.0) w_plus += ranks[i];
    }

    // tie groups among |scores|
    std::vector<double> sorted = magnitude;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    bool ties = false;
    for (std::size_t a = 0; a < n;) {
        std::size_t b = a + 1;
        while (b < n && sorted[b] == sorted[a]) ++b;
        const double t = static_cast<double>(b - a);
        if (b - a > 1) ties = true;
        tie_term += t * t * t - t;
        a = b;
    }

    const double nd = static_cast<double>(n);
    TestReport r;
    r.statistic_name = "W+";
    r.observed = w_plus;
    r.null_mean = nd * (nd + 1.0) / 4.0;
    r.n_effective = n;
    r.n_zero_scores = scores.size() - n;
    r.alternative = alt;

    if (!ties && n <= kExactWilcoxonLimit) {
        const auto table = WilcoxonNull::cached(static_cast<int>(n));
        const int w = static_cast<int>(std::lround(w_plus));
        r.method = PValueMethod::Exact;
        switch (alt) {
            case Alternative::TwoSided:
                r.p_value = std::min(1.0, 2.0 * std::min(table->cdf(w), table->upper_tail(w)));
                break;
            case Alternative::Greater: r.p_value = table->upper_tail(w); break;
            case Alternative::Less: r.p_value = table->cdf(w); break;
        }
        return r;
    }

    r.method = PValueMethod::NormalApprox;
    r.p_value = wilcoxon_normal_p(w_plus, n, tie_term, alt);
    return r;
}

std::string to_string(Alternative alt) {
    switch (alt) {
        case Alternative::TwoSided: return "two-sided";
        case Alternative::Less: return "less";
        case Alternative::Greater: return "greater";
    }
    return "?";
}

std::string to_string(PValueMethod m) {
    return m == PValueMethod::Exact ? "exact" : "normal-approx";
}

Alternative parse_alternative(const std::string& text) {
    if (text == "two-sided") return Alternative::TwoSided;
    if (text == "less") return Alternative::Less;
    if (text == "greater") return Alternative::Greater;
    throw SchemaError("unknown alternative '" + text + "' (expected two-sided, less or greater)");
}

}  // namespace pairedfd
