#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "corpus.hpp"
#include "orbcount/polynomial.hpp"

using namespace orbcount;

TEST(Parse, HumanAndListFormsAgree) {
    EXPECT_EQ(parse_polynomial("x^2-x-1"), parse_polynomial("-1,-1,1"));
    EXPECT_EQ(parse_polynomial("x^3-12*x-8"), parse_polynomial("x^3 - 12x - 8"));
    EXPECT_EQ(parse_polynomial("x^3-12x-8"), parse_polynomial("-8,-12,0,1"));
    EXPECT_EQ(parse_polynomial("X^2+3"), IntPolynomial({3, 0, 1}));
}

TEST(Parse, RejectsMalformedAndNonMonic) {
    EXPECT_THROW(parse_polynomial(""), ParseError);
    EXPECT_THROW(parse_polynomial("x^2+*3"), ParseError);
    EXPECT_THROW(parse_polynomial("2x^2-1"), ParseError);
    EXPECT_THROW(parse_polynomial("1,,1"), ParseError);
    EXPECT_THROW(parse_polynomial("1,-1,-1"), ParseError);  // -x^2 - x + 1
}

TEST(Parse, ToStringRoundTrips) {
    for (const auto& chi : fixtures::property_corpus()) EXPECT_EQ(parse_polynomial(chi.to_string()), chi);
}

TEST(Discriminant, KnownValues) {
    EXPECT_EQ(discriminant(parse_polynomial("x^2-x-1")), 5);
    EXPECT_EQ(discriminant(parse_polynomial("x^2-20")), 80);
    EXPECT_EQ(discriminant(parse_polynomial("x^3-12x-8")), 5184);
    EXPECT_EQ(discriminant(parse_polynomial("x^3-4x-1")), 229);
    EXPECT_EQ(discriminant(parse_polynomial("x^3-3x-1")), 81);
}

TEST(Discriminant, HankelMatchesResultant) {
    for (const auto& chi : fixtures::random_cubics(60, 40, 7)) EXPECT_EQ(discriminant(chi), discriminant_via_resultant(chi)) << chi.to_string();
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-30, 30);
    for (int i = 0; i < 40; ++i) {
        IntPolynomial q({d(rng), d(rng), d(rng), d(rng), 1});
        EXPECT_EQ(discriminant(q), discriminant_via_resultant(q)) << q.to_string();
    }
}

TEST(Discriminant, TranslationInvariant) {
    for (const auto& chi : fixtures::property_corpus())
        for (int c : {-7, -1, 1, 3, 12}) EXPECT_EQ(discriminant(translate(chi, c)), discriminant(chi));
}

TEST(Translate, IsAGroupAction) {
    const auto chi = parse_polynomial("x^3-4x-1");
    EXPECT_EQ(translate(translate(chi, 3), -3), chi);
    EXPECT_EQ(translate(translate(chi, 2), 5), translate(chi, 7));
    EXPECT_EQ(translate(parse_polynomial("x^2-2"), 1), parse_polynomial("x^2-2x-1"));
}

namespace {

// Real roots of a monic quartic or lower by the companion eigenvalue-free route: Durand-Kerner.
int numeric_real_roots(const ZPoly& p) {
    const int n = p.degree();
    std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::pow(std::complex<double>(0.4, 0.9), i);
    auto eval = [&](std::complex<double> x) {
        std::complex<double> r = 0;
        for (int i = n; i >= 0; --i) r = r * x + p[i].convert_to<double>();
        return r;
    };
    for (int it = 0; it < 2000; ++it)
        for (int i = 0; i < n; ++i) {
            std::complex<double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            z[static_cast<std::size_t>(i)] -= eval(z[static_cast<std::size_t>(i)]) / den;
        }
    int real = 0;
    for (auto r : z) real += std::abs(r.imag()) < 1e-7 * (1 + std::abs(r)) ? 1 : 0;
    return real;
}

}  // namespace

TEST(Sturm, MatchesNumericRoots) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int i = 0; i < 60; ++i) {
        IntPolynomial q({d(rng), d(rng), d(rng), d(rng), 1});
        if (discriminant(q) == 0) continue;
        EXPECT_EQ(sturm_real_root_count(q.poly()), numeric_real_roots(q.poly())) << q.to_string();
    }
    EXPECT_EQ(sturm_real_root_count(parse_polynomial("x^4-5x^2+4").poly()), 4);
    EXPECT_EQ(sturm_real_root_count(parse_polynomial("x^4+1").poly()), 0);
}

TEST(Hypotheses, IrreducibleAndTotallyReal) {
    EXPECT_TRUE(is_irreducible_low_degree(parse_polynomial("x^2-x-1")));
    EXPECT_FALSE(is_irreducible_low_degree(parse_polynomial("x^2-4")));
    EXPECT_FALSE(is_irreducible_low_degree(parse_polynomial("x^3-7x-6")));
    EXPECT_TRUE(is_irreducible_low_degree(parse_polynomial("x^3-4x-1")));
    EXPECT_FALSE(is_totally_real(parse_polynomial("x^2+1")));
    EXPECT_FALSE(is_totally_real(parse_polynomial("x^3-2")));
    EXPECT_TRUE(is_totally_real(parse_polynomial("x^3-3x-1")));
    EXPECT_THROW(is_irreducible_low_degree(parse_polynomial("x^4+1")), UnsupportedDegree);
}
