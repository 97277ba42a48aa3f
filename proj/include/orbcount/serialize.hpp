#pragma once

// JSON forms of the result types. Reals carry 10 significant digits, big
// integers become strings past 64 bits.

#include <cstdio>
#include <string>

#include <json.hpp>

#include "orbcount/enumerate.hpp"
#include "orbcount/fetch.hpp"
#include "orbcount/invariants.hpp"
#include "orbcount/lattice_census.hpp"
#include "orbcount/local_analysis.hpp"
#include "orbcount/orbital.hpp"

namespace orbcount {

using json = nlohmann::json;

inline double round_sig(double x, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::stod(buf);
}

inline std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline json bigint_json(const BigInt& x) {
    if (fits_int64(x)) return x.convert_to<long long>();
    return x.str();
}

inline ExactRational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return ExactRational(BigInt(s));
        return ExactRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("not a rational number: '" + s + "'");
    }
}

// LocalProfile

inline json to_json(const LocalProfile& p) {
    json factors = json::array();
    for (const auto& f : p.factors) factors.push_back({{"e", f.ramification_index}, {"f", f.residue_degree}, {"s", f.local_length}});
    return {{"p", bigint_json(p.p)},     {"q", bigint_json(p.q)}, {"factors", factors},
            {"S", p.s_length},           {"delta", p.delta},      {"d", p.d},
            {"rho", p.rho},              {"tag", to_string(p.tag)}, {"torus_count", bigint_json(residue_unit_count(p))}};
}

inline LocalProfile local_profile_from_json(const json& j) {
    try {
        LocalProfile p;
        p.p = detail::json_bigint(j.at("p"), "p");
        p.q = detail::json_bigint(j.at("q"), "q");
        for (const auto& f : j.at("factors"))
            p.factors.push_back({f.at("f").get<int>(), f.at("e").get<int>(), f.at("s").get<int>()});
        for (const auto& f : p.factors) p.n += f.degree();
        p.s_length = j.at("S").get<int>();
        p.delta = j.at("delta").get<int>();
        p.d = j.at("d").get<int>();
        p.rho = j.at("rho").get<int>();
        p.tag = splitting_tag_from_string(j.at("tag").get<std::string>());
        p.validate();
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad local profile: ") + e.what());
    } catch (const InvariantViolation& e) {
        throw ParseError(std::string("inconsistent local profile: ") + e.what());
    }
}

// Orbital factors

inline json to_json(const OrbitalFactor& f) {
    return {{"p", bigint_json(f.p)}, {"O", bigint_json(f.orbital_value)}, {"S", f.s_length}, {"normalized", to_string(f.normalized)}};
}

inline OrbitalFactor orbital_factor_from_json(const json& j) {
    try {
        OrbitalFactor f;
        f.p = detail::json_bigint(j.at("p"), "p");
        f.orbital_value = detail::json_bigint(j.at("O"), "O");
        f.s_length = j.at("S").get<int>();
        f.normalized = parse_rational(j.at("normalized").get<std::string>());
        return f;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad orbital factor: ") + e.what());
    }
}

inline json to_json(const OrbitalProduct& o) {
    json fs = json::array();
    for (const auto& f : o.factors) fs.push_back(to_json(f));
    return {{"factors", fs}, {"value", to_string(o.value)}};
}

inline OrbitalProduct orbital_product_from_json(const json& j) {
    try {
        OrbitalProduct o;
        for (const auto& f : j.at("factors")) o.factors.push_back(orbital_factor_from_json(f));
        o.value = parse_rational(j.at("value").get<std::string>());
        return o;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad orbital product: ") + e.what());
    }
}

// Field invariants

inline json to_json(const FieldInvariants& inv) {
    json j{{"disc", bigint_json(inv.field_discriminant)},
           {"degree", inv.degree},
           {"hR", round_sig(inv.hr_product)},
           {"source", to_string(inv.source)}};
    if (inv.class_number) j["h"] = bigint_json(*inv.class_number);
    if (inv.regulator) j["R"] = round_sig(*inv.regulator);
    return j;
}

inline FieldInvariants field_invariants_from_json(const json& j) {
    InvariantSource src = InvariantSource::file;
    if (j.contains("source")) src = invariant_source_from_string(j.at("source").get<std::string>());
    return invariants_from_json(j, src);
}

// Prediction

inline json to_json(const AsymptoticPrediction& a) {
    return {{"c", round_sig(a.coefficient)},
            {"m", a.m},
            {"n", a.n},
            {"branch", a.branch},
            {"archimedean_constant", round_sig(a.archimedean_constant)},
            {"zeta_factor", round_sig(a.zeta_factor)},
            {"field_factor", round_sig(a.field_factor)},
            {"orbital_product", to_string(a.orbital_product)},
            {"extra_classes", a.extra_classes}};
}

inline AsymptoticPrediction prediction_from_json(const json& j) {
    try {
        AsymptoticPrediction a;
        a.coefficient = j.at("c").get<double>();
        a.m = j.at("m").get<int>();
        a.n = j.at("n").get<int>();
        a.branch = j.at("branch").get<int>();
        a.archimedean_constant = j.at("archimedean_constant").get<double>();
        a.zeta_factor = j.at("zeta_factor").get<double>();
        a.field_factor = j.at("field_factor").get<double>();
        a.orbital_product = parse_rational(j.at("orbital_product").get<std::string>());
        a.extra_classes = j.at("extra_classes").get<int>();
        if (a.m != a.n * (a.n - 1) / 2) throw ParseError("exponent m does not match n");
        return a;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad prediction: ") + e.what());
    }
}

// Counts

inline json to_json(const CountResult& r) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.thresholds.size(); ++i)
        rows.push_back({{"T", round_sig(r.thresholds[i])}, {"N", r.counts[i]}, {"elapsed_s", round_sig(r.elapsed[i])}});
    return {{"rows", rows}};
}

inline CountResult count_result_from_json(const json& j) {
    try {
        CountResult r;
        for (const auto& row : j.at("rows")) {
            r.thresholds.push_back(row.at("T").get<double>());
            r.counts.push_back(row.at("N").get<std::uint64_t>());
            r.elapsed.push_back(row.at("elapsed_s").get<double>());
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad count result: ") + e.what());
    }
}

inline json to_json(const ConvergenceRow& r) {
    return {{"T", round_sig(r.T)}, {"N", r.N}, {"predicted", round_sig(r.predicted)}, {"ratio", round_sig(r.ratio)}};
}

inline ConvergenceRow convergence_row_from_json(const json& j) {
    try {
        return {j.at("T").get<double>(), j.at("N").get<std::uint64_t>(), j.at("predicted").get<double>(), j.at("ratio").get<double>()};
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad convergence row: ") + e.what());
    }
}

// Lattice census

inline json to_json(const LatticeClass& c) {
    return {{"weight", c.weight}, {"mult_len", c.multiplier_length}, {"hnf", c.hnf_basis}};
}

inline LatticeClass lattice_class_from_json(const json& j) {
    try {
        LatticeClass c;
        c.weight = j.at("weight").get<std::int64_t>();
        c.multiplier_length = j.at("mult_len").get<int>();
        c.hnf_basis = j.at("hnf").get<std::vector<std::vector<std::int64_t>>>();
        return c;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad lattice class: ") + e.what());
    }
}

inline json to_json(const CensusResult& r) {
    json cls = json::array();
    for (const auto& c : r.classes) cls.push_back(to_json(c));
    return {{"census", bigint_json(r.census)}, {"depth", r.depth}, {"min_depth", r.min_depth}, {"classes", cls}};
}

inline CensusResult census_from_json(const json& j) {
    try {
        CensusResult r;
        r.census = detail::json_bigint(j.at("census"), "census");
        r.depth = j.at("depth").get<int>();
        r.min_depth = j.at("min_depth").get<int>();
        for (const auto& c : j.at("classes")) r.classes.push_back(lattice_class_from_json(c));
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad census: ") + e.what());
    }
}

}  // namespace orbcount
