#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "corpus.hpp"
#include "orbcount/fetch.hpp"
#include "orbcount/invariants.hpp"

using namespace orbcount;

namespace {

std::string data(const std::string& name) { return std::string(ORBCOUNT_TEST_DATA) + "/" + name; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(SpecialValues, Constants) {
    EXPECT_NEAR(zeta3(), 1.2020569031595942, 1e-15);
    EXPECT_NEAR(riemann_zeta_int(2), std::numbers::pi * std::numbers::pi / 6, 1e-15);
    EXPECT_DOUBLE_EQ(unit_ball_volume(1), 2.0);
    EXPECT_NEAR(unit_ball_volume(3), 4 * std::numbers::pi / 3, 1e-14);
}

TEST(FieldDiscriminant, Examples) {
    EXPECT_EQ(field_discriminant(parse_polynomial("x^2-20")), 5);
    EXPECT_EQ(field_discriminant(parse_polynomial("x^2-x-1")), 5);
    EXPECT_EQ(field_discriminant(parse_polynomial("x^3-12x-8")), 81);
    EXPECT_EQ(field_discriminant(parse_polynomial("x^3-4x-1")), 229);
}

TEST(ClassifyExtension, Examples) {
    EXPECT_TRUE(classify_extension(parse_polynomial("x^2-x-1")).galois);
    EXPECT_TRUE(classify_extension(parse_polynomial("x^3-3x-1")).galois);
    EXPECT_FALSE(classify_extension(parse_polynomial("x^3-4x-1")).galois);
    EXPECT_EQ(classify_extension(parse_polynomial("x^3-4x-1")).branch, 1);
}

TEST(Quadratic, MatchesFixtures) {
    for (int d : {5, 8, 12, 13, 40}) {
        const auto fixture = load_invariants_file(data("nf_2_" + std::to_string(d) + ".json"));
        const auto inv = quadratic_invariants(d);
        EXPECT_EQ(inv.class_number, fixture.class_number) << d;
        EXPECT_LT(rel(*inv.regulator, *fixture.regulator), 1e-6) << d;
        EXPECT_EQ(inv.source, InvariantSource::builtin_quadratic);
    }
}

TEST(Quadratic, LargerClassNumbers) {
    EXPECT_EQ(*quadratic_invariants(229).class_number, 3);
    EXPECT_EQ(*quadratic_invariants(145).class_number, 4);
    EXPECT_EQ(*quadratic_invariants(60).class_number, 2);
}

TEST(Quadratic, PellEquationExact) {
    for (int d = 5; d < 2000; ++d) {
        if (!is_fundamental_discriminant(d) || is_perfect_square(BigInt(d))) continue;
        const auto u = fundamental_unit(d);
        EXPECT_EQ(u.x * u.x - BigInt(d) * u.y * u.y, 4 * u.norm) << d;
        EXPECT_GT(u.y, 0);
    }
}

TEST(Quadratic, Errors) {
    EXPECT_THROW(quadratic_invariants(-4), ArgumentError);
    EXPECT_THROW(quadratic_invariants(16), ArgumentError);
    EXPECT_THROW(quadratic_invariants(20), ArgumentError);
}

TEST(ResidueEstimate, QuadraticConverges) {
    double r6 = 0, r4 = 0;
    const auto chi = parse_polynomial("x^2-x-1");
    const double ff = zeta_residue_estimate(chi, 1000000, &r6);
    zeta_residue_estimate(chi, 10000, &r4);
    const double exact = 4 * std::log((1 + std::sqrt(5.0)) / 2) / (2 * std::sqrt(5.0));
    EXPECT_LT(rel(r6, 0.430409), 0.01);
    EXPECT_LT(std::abs(r6 - exact), std::abs(r4 - exact));
    EXPECT_LT(rel(ff, 0.2152045), 0.01);
}

TEST(ResidueEstimate, CubicAgreesWithFixture) {
    const auto fixture = load_invariants_file(data("nf_3_81.json"));
    const double ff = zeta_residue_estimate(parse_polynomial("x^3-3x-1"), 1000000);
    EXPECT_LT(rel(ff, fixture.hr_product / 9), 0.02);
    const auto f229 = load_invariants_file(data("nf_3_229.json"));
    EXPECT_LT(rel(residue_estimate_invariants(parse_polynomial("x^3-4x-1")).hr_product, f229.hr_product), 0.02);
}

TEST(ResidueEstimate, Errors) {
    EXPECT_THROW(zeta_residue_estimate(parse_polynomial("x^2-x-1"), 999), ArgumentError);
    EXPECT_THROW(zeta_residue_estimate(parse_polynomial("x^2+1"), 10000), HypothesisViolation);
}

TEST(Assembly, Examples) {
    FieldInvariants unit;
    unit.field_discriminant = 1;
    unit.hr_product = 1;
    const auto c = assemble_leading_constant(parse_polynomial("x^2-x-1"), unit, OrbitalProduct{}, 1);
    EXPECT_NEAR(c.coefficient, 24 / std::numbers::pi, 1e-12);

    const auto inv = quadratic_invariants(5);
    const auto a = assemble_leading_constant(parse_polynomial("x^2-x-1"), inv, global_orbital_product(parse_polynomial("x^2-x-1")), 1);
    const double closed = 24 * std::log((1 + std::sqrt(5.0)) / 2) / (std::numbers::pi * std::sqrt(5.0));
    EXPECT_NEAR(a.coefficient, closed, 1e-12);
    EXPECT_LT(rel(a.coefficient, 1.6440419), 1e-6);
    EXPECT_EQ(a.m, 1);
    const auto b = assemble_leading_constant(parse_polynomial("x^2-20"), inv, global_orbital_product(parse_polynomial("x^2-20")), 1);
    EXPECT_LT(rel(b.coefficient, 4.1101047), 1e-6);
    EXPECT_NEAR(b.coefficient, a.coefficient * 2.5, 1e-12);
    EXPECT_NEAR(a.archimedean_constant * a.zeta_factor * a.field_factor * to_double(a.orbital_product), a.coefficient, 1e-12);
}

TEST(Assembly, MatchesReferenceOnMaximalOrders) {
    for (const auto& s : fixtures::maximal_order_corpus()) {
        const auto chi = parse_polynomial(s);
        FieldInvariants inv;
        if (chi.degree() == 2) {
            inv = quadratic_invariants(field_discriminant(chi));
        } else {
            inv.field_discriminant = field_discriminant(chi);
            inv.degree = 3;
            inv.hr_product = 1.2345678901;  // any positive value: the identity is in hR
        }
        const double a = assemble_leading_constant(chi, inv, global_orbital_product(chi), 1).coefficient;
        const double e = ems_reference_constant(chi, inv);
        EXPECT_LT(rel(a, e), 1e-12) << s;
    }
    const auto inv2 = quadratic_invariants(8);
    EXPECT_NEAR(ems_reference_constant(parse_polynomial("x^2-2"), inv2), 2.3805, 1e-4);
}

TEST(Assembly, ReferenceNeedsMaximalOrder) {
    EXPECT_THROW(ems_reference_constant(parse_polynomial("x^2-20"), quadratic_invariants(5)), PreconditionError);
}

TEST(Assembly, BranchTwoAddsClasses) {
    FieldInvariants inv;
    inv.field_discriminant = 229;
    inv.degree = 3;
    inv.hr_product = 2.355454590844564;
    const auto chi = parse_polynomial("x^3-4x-1");
    const auto b1 = assemble_leading_constant(chi, inv, OrbitalProduct{}, 1);
    const auto b2 = assemble_leading_constant(chi, inv, OrbitalProduct{}, 2);
    EXPECT_EQ(b2.extra_classes, 2);
    EXPECT_DOUBLE_EQ(b2.coefficient, 3 * b1.coefficient);
    EXPECT_THROW(assemble_leading_constant(chi, inv, OrbitalProduct{}, 3), ArgumentError);
    inv.degree = 2;
    EXPECT_THROW(assemble_leading_constant(chi, inv, OrbitalProduct{}, 1), ArgumentError);
}
