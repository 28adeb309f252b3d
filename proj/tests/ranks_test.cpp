#include "oracles.hpp"
#include "support.hpp"

#include <pairedfd/error.hpp>
#include <pairedfd/harness.hpp>
#include <pairedfd/random.hpp>
#include <pairedfd/ranks.hpp>
#include <pairedfd/simgen.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace pairedfd;
using testing_support::random_rows;
using testing_support::to_difference;

TEST(Midrank, Examples) {
    EXPECT_EQ(midrank(std::vector<double>{10, 20, 30}), (std::vector<double>{1, 2, 3}));
    EXPECT_EQ(midrank(std::vector<double>{5, 5, 9}), (std::vector<double>{1.5, 1.5, 3}));
    EXPECT_EQ(midrank(std::vector<double>{2, 2, 2, 2}), (std::vector<double>{2.5, 2.5, 2.5, 2.5}));
    EXPECT_EQ(midrank(std::vector<double>{3, 1, 2}), (std::vector<double>{3, 1, 2}));
    EXPECT_THROW((void)midrank(std::vector<double>{}), DegenerateSample);
}

TEST(Midrank, MatchesCountingOracleWithDuplicates) {
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> small(0, 4);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<double> v(8);
        for (double& x : v) x = small(gen) * 0.5;
        const auto got = midrank(v);
        const auto want = oracle::counting_midrank(v);
        EXPECT_EQ(got, want);
        EXPECT_DOUBLE_EQ(std::accumulate(got.begin(), got.end(), 0.0), 36.0);
    }
}

TEST(SignCurve, Examples) {
    EXPECT_EQ(sign_curve(std::vector<double>{2, -3, 0}), (std::vector<int>{1, -1, 0}));
    EXPECT_EQ(sign_curve(std::vector<double>{-1, -0.5, -7}), (std::vector<int>{-1, -1, -1}));
    std::mt19937_64 gen(5);
    const auto rows = random_rows(gen, 20, 12, 0.2);
    for (const auto& r : rows) {
        std::vector<double> neg(r);
        for (double& x : neg) x = -x;
        const auto a = sign_curve(r);
        const auto b = sign_curve(neg);
        for (std::size_t k = 0; k < r.size(); ++k) EXPECT_EQ(b[k], -a[k]);
    }
}

TEST(SignedRankField, TwoSubjects) {
    const auto f = signed_rank_field(to_difference({{3.0, 0.0}, {-1.0, 0.0}}));
    EXPECT_EQ(f.sign(0, 0), 1);
    EXPECT_EQ(f.sign(1, 0), -1);
    EXPECT_EQ(f.absranks(0, 0), 2.0);
    EXPECT_EQ(f.absranks(1, 0), 1.0);
    // all-zero column: all tied at (n + 1) / 2
    EXPECT_EQ(f.sign(0, 1), 0);
    EXPECT_EQ(f.sign(1, 1), 0);
    EXPECT_EQ(f.absranks(0, 1), 1.5);
    EXPECT_EQ(f.absranks(1, 1), 1.5);
}

TEST(SignedRankField, NeedsTwoSubjects) {
    EXPECT_THROW((void)signed_rank_field(to_difference({{1.0, 2.0}})), DegenerateSample);
}

TEST(SignedRankField, MatchesOracleAndInvariants) {
    std::mt19937_64 gen(17);
    for (int rep = 0; rep < 50; ++rep) {
        const auto rows = random_rows(gen, 5, 3, 0.15, 0.2);
        const auto f = signed_rank_field(to_difference(rows));
        for (std::size_t k = 0; k < 3; ++k) {
            double column_sum = 0;
            for (std::size_t i = 0; i < 5; ++i) {
                EXPECT_EQ(f.absranks(i, k), oracle::abs_rank(rows, i, k));
                EXPECT_EQ(f.sign(i, k), oracle::sign(rows[i][k]));
                EXPECT_EQ(f.sign(i, k) == 0, rows[i][k] == 0.0);
                EXPECT_GE(f.absranks(i, k), 1.0);
                EXPECT_LE(f.absranks(i, k), 5.0);
                column_sum += f.absranks(i, k);
            }
            EXPECT_DOUBLE_EQ(column_sum, 15.0);
        }
    }
}

TEST(SignedRankField, ScaleAndNegationInvariance) {
    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 100; ++rep) {
        const auto rows = random_rows(gen, 7, 6, 0.1, 0.1);
        const auto base = signed_rank_field(to_difference(rows));
        for (double c : {0.001, 2.5, 1e6}) {
            const auto up = signed_rank_field(to_difference(testing_support::scaled(rows, c)));
            EXPECT_EQ(up.signs, base.signs);
            EXPECT_EQ(up.absranks, base.absranks);
            const auto down = signed_rank_field(to_difference(testing_support::scaled(rows, -c)));
            EXPECT_EQ(down.absranks, base.absranks);
            for (std::size_t j = 0; j < base.signs.size(); ++j) EXPECT_EQ(down.signs[j], -base.signs[j]);
        }
    }
}

TEST(SignedRankField, PermutingSubjectsPermutesRows) {
    std::mt19937_64 gen(29);
    const auto rows = random_rows(gen, 6, 4, 0.1, 0.2);
    std::vector<std::size_t> perm{3, 0, 5, 1, 4, 2};
    testing_support::Rows shuffled;
    for (auto p : perm) shuffled.push_back(rows[p]);
    const auto a = signed_rank_field(to_difference(rows));
    const auto b = signed_rank_field(to_difference(shuffled));
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_EQ(b.absranks(i, k), a.absranks(perm[i], k));
            EXPECT_EQ(b.sign(i, k), a.sign(perm[i], k));
        }
    }
}

// Under the null generator one subject's rank in a fixed column is uniform on
// {1..n}, and a positive sign has probability 1/2.
TEST(SignedRankField, NullRanksUniformAndSignsFair) {
    SimConfig config;
    config.n = 10;
    config.grid_size = 12;
    config.truncation = 60;
    config.preprocess = PreprocessKind::None;
    const DatasetGenerator generator(config);
    const std::size_t reps = 10000, column = 5, subject = 3;
    std::vector<double> counts(config.n, 0.0);
    std::size_t positive = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        RandomStream rng(config.seed, r);
        const auto field = signed_rank_field(difference(generator.generate(rng)));
        counts[static_cast<std::size_t>(field.absranks(subject, column)) - 1] += 1;
        if (field.sign(subject, column) > 0) ++positive;
    }
    const double expected = static_cast<double>(reps) / config.n;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    EXPECT_LT(chi2, 27.877);  // chi-square(9) upper 0.001 point
    const double share = static_cast<double>(positive) / reps;
    EXPECT_NEAR(share, 0.5, 4.0 * std::sqrt(0.25 / reps));
}
