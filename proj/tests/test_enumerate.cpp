#include <gtest/gtest.h>

#include "corpus.hpp"
#include "orbcount/enumerate.hpp"

using namespace orbcount;

TEST(Count, SmallValues) {
    EXPECT_EQ(count_matrices(parse_polynomial("x^2-x-1"), 3), 8u);
    EXPECT_EQ(count_matrices(parse_polynomial("x^2-20"), 6), 0u);
    EXPECT_EQ(count_matrices(parse_polynomial("x^3-4x-1"), 2), 0u);
    EXPECT_EQ(count_matrices(parse_polynomial("x^3-4x-1"), 3), 96u);
    EXPECT_EQ(count_matrices(parse_polynomial("x^3-4x-1"), 4), 1008u);
}

TEST(Count, MatchesNaiveOracle) {
    std::vector<IntPolynomial> corpus;
    for (const char* s : {"x^2-x-1", "x^2-2", "x^2-20", "x^2-3x+1", "x^3-4x-1", "x^3-3x-1", "x^3-x^2-2x+1", "x^3-12x-8", "x^3+x^2-3x-1"})
        corpus.push_back(parse_polynomial(s));
    for (const auto& chi : corpus)
        for (double T : {1.0, 2.0, 2.5, 3.0, 4.0, 5.0}) EXPECT_EQ(count_matrices(chi, T), naive_count_oracle(chi, T)) << chi.to_string() << " T=" << T;
}

TEST(Count, NonTotallyRealAlsoCounted) {
    const auto chi = parse_polynomial("x^2+1");
    for (double T : {2.0, 4.0}) EXPECT_EQ(count_matrices(chi, T), naive_count_oracle(chi, T));
}

TEST(Count, ThreadCountDoesNotChangeResult) {
    const auto chi = parse_polynomial("x^3-4x-1");
    const auto one = count_matrices(chi, 7, {default_budget, 1});
    for (unsigned t : {2u, 3u, 5u}) EXPECT_EQ(count_matrices(chi, 7, {default_budget, t}), one);
}

TEST(Count, MonotoneInT) {
    const auto chi = parse_polynomial("x^2-x-1");
    const auto r = count_thresholds(chi, {10, 20, 40, 80});
    for (std::size_t i = 1; i < r.counts.size(); ++i) EXPECT_LE(r.counts[i - 1], r.counts[i]);
}

TEST(Count, Deterministic) {
    const auto chi = parse_polynomial("x^3-12x-8");
    EXPECT_EQ(count_matrices(chi, 9), count_matrices(chi, 9));
}

TEST(Count, BudgetAndErrors) {
    EXPECT_THROW(count_matrices(parse_polynomial("x^3-4x-1"), 100, {1e6, 1}), BudgetExceeded);
    EXPECT_THROW(count_matrices(parse_polynomial("x^2-4"), 5), HypothesisViolation);
    EXPECT_THROW(count_matrices(parse_polynomial("x^4-2"), 5), UnsupportedDegree);
    EXPECT_THROW(count_matrices(parse_polynomial("x^2-2"), -1), ArgumentError);
    EXPECT_THROW(count_thresholds(parse_polynomial("x^2-2"), {5, 3}), ArgumentError);
    EXPECT_THROW(naive_count_oracle(parse_polynomial("x^2-2"), 7), ArgumentError);
}

TEST(Convergence, TableColumns) {
    AsymptoticPrediction pred;
    pred.m = 1;
    pred.coefficient = 2;
    CountResult r{{10, 20}, {19, 41}, {0, 0}};
    const auto rows = convergence_table(r, pred);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_DOUBLE_EQ(rows[0].predicted, 20);
    EXPECT_DOUBLE_EQ(rows[1].ratio, 41.0 / 40);
}
