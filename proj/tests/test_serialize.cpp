#include <gtest/gtest.h>

#include "corpus.hpp"
#include "orbcount/serialize.hpp"

using namespace orbcount;

TEST(Json, LocalProfileRoundTrip) {
    for (const auto& chi : fixtures::property_corpus())
        for (const auto& prof : ramified_primes(chi)) {
            const json j = to_json(prof);
            EXPECT_EQ(to_json(local_profile_from_json(json::parse(j.dump()))), j);
        }
    const json j = to_json(local_splitting(parse_polynomial("x^3-12x-8"), 2));
    EXPECT_EQ(j, json::parse(R"({"p":2,"q":2,"factors":[{"e":1,"f":3,"s":3}],"S":3,"delta":3,"d":1,"rho":0,"tag":"field-unramified","torus_count":7})"));
}

TEST(Json, OrbitalRoundTrip) {
    const auto orb = global_orbital_product(parse_polynomial("x^3-12x-8"));
    const json j = to_json(orb);
    EXPECT_EQ(j["factors"][0], json::parse(R"({"p":2,"O":29,"S":3,"normalized":"29/8"})"));
    const auto back = orbital_product_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.value, orb.value);
    EXPECT_EQ(to_json(back), j);
}

TEST(Json, InvariantsAndPredictionRoundTrip) {
    const auto inv = quadratic_invariants(40);
    const json ji = to_json(inv);
    EXPECT_EQ(to_json(field_invariants_from_json(json::parse(ji.dump()))), ji);

    const auto chi = parse_polynomial("x^2-20");
    const auto pred = assemble_leading_constant(chi, quadratic_invariants(5), global_orbital_product(chi), 1);
    const json jp = to_json(pred);
    EXPECT_EQ(jp["orbital_product"], "5/2");
    EXPECT_EQ(to_json(prediction_from_json(json::parse(jp.dump()))), jp);
    json bad = jp;
    bad["m"] = 2;
    EXPECT_THROW(prediction_from_json(bad), ParseError);
    bad.erase("c");
    EXPECT_THROW(prediction_from_json(bad), ParseError);
}

TEST(Json, CountsAndCensusRoundTrip) {
    CountResult r{{10, 100}, {16, 168}, {0.001, 0.0123456789012}};
    const json jr = to_json(r);
    EXPECT_EQ(to_json(count_result_from_json(json::parse(jr.dump()))), jr);
    EXPECT_EQ(jr["rows"][1]["elapsed_s"].get<double>(), 0.0123456789);

    const ConvergenceRow row{100, 168, 164.4041052, 1.021872293};
    EXPECT_EQ(to_json(convergence_row_from_json(to_json(row))), to_json(row));

    const auto census = stable_lattice_census(parse_polynomial("x^2-20"), 2, 2);
    const json jc = to_json(census);
    EXPECT_EQ(jc["census"], 10);
    EXPECT_EQ(to_json(census_from_json(json::parse(jc.dump()))), jc);
}

TEST(Json, BigIntegersBecomeStrings) {
    EXPECT_EQ(bigint_json(BigInt(42)), 42);
    const BigInt big = ipow(BigInt(10), 30);
    EXPECT_EQ(bigint_json(big), big.str());
}

TEST(Json, FormattingIsTenDigits) {
    EXPECT_EQ(format_real(1.6440410523), "1.644041052");
    EXPECT_EQ(format_real(100), "100");
    EXPECT_DOUBLE_EQ(round_sig(0.123456789012345), 0.123456789);
}
