#include <gtest/gtest.h>

#include <algorithm>

#include "corpus.hpp"
#include "orbcount/orbital.hpp"

using namespace orbcount;

namespace {

LocalProfile make_profile(int q, std::vector<LocalFactor> factors, int rho) {
    LocalProfile p;
    p.p = q;
    p.q = q;
    p.factors = std::move(factors);
    for (const auto& f : p.factors) {
        p.n += f.degree();
        p.delta = std::max(p.delta, f.local_length);
        p.s_length += f.local_length;
    }
    p.s_length += rho;
    p.rho = rho;
    p.d = p.n == 3 ? p.delta / 3 : 0;
    if (static_cast<int>(p.factors.size()) == p.n) p.tag = SplittingTag::split_complete;
    else if (p.factors.size() == 1) p.tag = p.factors[0].ramification_index == 1 ? SplittingTag::field_unramified : SplittingTag::field_ramified;
    else {
        const bool ram = std::any_of(p.factors.begin(), p.factors.end(), [](const LocalFactor& f) { return f.ramification_index > 1; });
        p.tag = ram ? SplittingTag::mixed_quadratic_ramified : SplittingTag::mixed_quadratic_unramified;
    }
    p.validate();
    return p;
}

BigInt geo(const BigInt& q, int s) { return (ipow(q, static_cast<unsigned>(s)) - 1) / (q - 1); }

}  // namespace

TEST(OrbitalGl2, Examples) {
    EXPECT_EQ(orbital_gl2(make_profile(3, {{1, 1, 0}, {1, 1, 0}}, 2)), 9);
    EXPECT_EQ(orbital_gl2(make_profile(2, {{2, 1, 2}}, 0)), 10);
    EXPECT_EQ(orbital_gl2(make_profile(2, {{1, 2, 1}}, 0)), 3);
    EXPECT_EQ(orbital_gl2(make_profile(2, {{1, 2, 2}}, 0)), 7);
    for (int q : {2, 3, 5}) {
        EXPECT_EQ(orbital_gl2(make_profile(q, {{1, 1, 0}, {1, 1, 0}}, 0)), 1);
        EXPECT_EQ(orbital_gl2(make_profile(q, {{2, 1, 0}}, 0)), 1);
        EXPECT_EQ(orbital_gl2(make_profile(q, {{1, 2, 0}}, 0)), 1);
    }
}

TEST(OrbitalGl3, Examples) {
    EXPECT_EQ(orbital_gl3(make_profile(2, {{1, 1, 0}, {1, 1, 0}, {1, 1, 0}}, 2)), 4);
    EXPECT_EQ(orbital_gl3(make_profile(2, {{3, 1, 3}}, 0)), 29);
    EXPECT_EQ(orbital_gl3(make_profile(2, {{1, 3, 1}}, 0)), 3);
    for (int q : {2, 3, 5}) {
        EXPECT_EQ(orbital_gl3(make_profile(q, {{3, 1, 0}}, 0)), 1);
        EXPECT_EQ(orbital_gl3(make_profile(q, {{1, 3, 0}}, 0)), 1);
        EXPECT_EQ(orbital_gl3(make_profile(q, {{1, 1, 0}, {2, 1, 0}}, 0)), 1);
    }
}

TEST(OrbitalGl3, SplitIsPowerOfQ) {
    for (int q : {2, 3, 5, 7})
        for (int s = 0; s <= 6; ++s) EXPECT_EQ(orbital_gl3(make_profile(q, {{1, 1, 0}, {1, 1, 0}, {1, 1, 0}}, s)), ipow(BigInt(q), s));
}

TEST(OrbitalGl3, TwoFactorBranchMatchesClosedForms) {
    for (int q : {2, 3, 5}) {
        const BigInt Q = q;
        for (int s1 = 0; s1 <= 3; ++s1)
            for (int r = 0; r <= 3; ++r) {
                const BigInt scale = ipow(Q, static_cast<unsigned>(r));
                const auto unram = make_profile(q, {{1, 1, 0}, {2, 1, s1}}, r);
                EXPECT_EQ(orbital_gl3(unram), scale * (1 + (Q + 1) * geo(Q, s1))) << "q=" << q << " S1=" << s1 << " r=" << r;
                const auto ram = make_profile(q, {{1, 1, 0}, {1, 2, s1}}, r);
                EXPECT_EQ(orbital_gl3(ram), scale * geo(Q, s1 + 1)) << "q=" << q << " S1=" << s1 << " r=" << r;
            }
    }
}

TEST(OrbitalGl3, ScaledFieldOrdersAreIntegral) {
    // p^k theta has characteristic polynomial p^{3k} chi(x / p^k) and index p^{3k} in Z_p[theta].
    for (const char* base : {"x^3-3x-1", "x^3-2", "x^3-3", "x^3-4x-1", "x^3-x-1"})
        for (int p : {2, 3, 5, 7})
            for (int k = 0; k <= 3; ++k) {
                const auto chi = parse_polynomial(base);
                std::vector<BigInt> c = chi.coeffs();
                for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] *= ipow(BigInt(p), static_cast<unsigned>(k * (3 - i)));
                const IntPolynomial scaled(c);
                const auto base_prof = local_splitting(chi, p);
                const auto prof = local_splitting(scaled, p);
                EXPECT_EQ(prof.s_length, base_prof.s_length + 3 * k) << base << " p=" << p << " k=" << k;
                EXPECT_EQ(prof.tag, base_prof.tag);
                EXPECT_GE(orbital_gl3(prof), 1);
            }
}

TEST(OrbitalProduct, Examples) {
    EXPECT_EQ(global_orbital_product(parse_polynomial("x^2-x-1")).value, 1);
    EXPECT_EQ(global_orbital_product(parse_polynomial("x^2-20")).value, ExactRational(5, 2));
    EXPECT_EQ(global_orbital_product(parse_polynomial("x^3-12x-8")).value, ExactRational(29, 8));
    const auto f = global_orbital_product(parse_polynomial("x^2-20")).factors;
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].p, 2);
    EXPECT_EQ(f[0].orbital_value, 10);
    EXPECT_EQ(f[0].s_length, 2);
    EXPECT_EQ(f[1].orbital_value, 1);
}

TEST(OrbitalProperties, IntegralOnRandomInputs) {
    int seen = 0;
    for (const auto& chi : fixtures::random_cubics(250, 120, 31))
        for (const auto& prof : ramified_primes(chi)) {
            const auto f = orbital_factor(prof);  // asserts exact division internally
            EXPECT_GE(f.orbital_value, 1);
            EXPECT_EQ(f.normalized, ExactRational(f.orbital_value, ipow(prof.p, static_cast<unsigned>(prof.s_length))));
            if (prof.s_length == 0) {
                EXPECT_EQ(f.orbital_value, 1);
            }
            ++seen;
        }
    EXPECT_GE(seen, 500);
}

TEST(OrbitalProperties, TranslationInvariance) {
    for (const auto& chi : fixtures::property_corpus()) {
        const auto base = global_orbital_product(chi).value;
        for (int c : {-4, -1, 1, 3, 10}) EXPECT_EQ(global_orbital_product(translate(chi, c)).value, base) << chi.to_string();
    }
}

TEST(OrbitalProperties, WrongDegreeRejected) {
    EXPECT_THROW(orbital_gl2(make_profile(2, {{3, 1, 0}}, 0)), Error);
    EXPECT_THROW(orbital_gl3(make_profile(2, {{2, 1, 0}}, 0)), Error);
}
