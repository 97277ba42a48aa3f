#pragma once

#include <vector>

#include "orbcount/bigint.hpp"
#include "orbcount/local_analysis.hpp"

namespace orbcount {

struct OrbitalFactor {
    BigInt p;
    BigInt orbital_value;
    int s_length = 0;
    ExactRational normalized;  // orbital_value / p^s_length
};

struct OrbitalProduct {
    std::vector<OrbitalFactor> factors;
    ExactRational value = 1;
};

namespace detail {

/// a / b, asserting exact divisibility.
inline BigInt exact_div(const BigInt& a, const BigInt& b, const char* what) {
    if (b == 0 || a % b != 0) throw InvariantViolation(std::string("non-integral orbital term: ") + what);
    return a / b;
}

inline BigInt geometric(const BigInt& q, int s) {  // (q^s - 1)/(q - 1)
    return exact_div(ipow(q, static_cast<unsigned>(s)) - 1, q - 1, "geometric sum");
}

}  // namespace detail

/// Orbital integral of gl_2 at one prime.
inline BigInt orbital_gl2(const LocalProfile& prof) {
    if (prof.n != 2) throw UnsupportedDegree("orbital_gl2 requires a degree-2 profile");
    const BigInt& q = prof.q;
    const int s = prof.s_length;
    switch (prof.tag) {
        case SplittingTag::split_complete: return ipow(q, static_cast<unsigned>(s));
        case SplittingTag::field_unramified: return 1 + (q + 1) * detail::geometric(q, s);
        case SplittingTag::field_ramified: return detail::geometric(q, s + 1);
        default: throw InvariantViolation("degree-2 profile with a mixed splitting tag");
    }
}

/// Phi of the degree-3 formula, as an exact rational.
///
/// First branch whenever K_p is not a field (split or mixed).
inline ExactRational orbital_phi(const LocalProfile& prof) {
    const ExactRational q(prof.q);
    const int delta = prof.delta, d = prof.d;
    auto qpow = [&](int k) { return ExactRational(ipow(prof.q, static_cast<unsigned>(k))); };
    ExactRational phi = (qpow(delta) - 1) / (q - 1);
    if (!prof.is_field()) return phi;
    phi -= 3 * (qpow(delta - d) - 1) / (q * q - 1);
    if (prof.tag == SplittingTag::field_ramified) phi += ((1 + delta - 3 * d) * qpow(delta - d) - 1) / (q * (q + 1));
    return phi;
}

/// Orbital integral of gl_3 at one prime: q^rho (1 + #T/(q-1)^2 Phi).
inline BigInt orbital_gl3(const LocalProfile& prof) {
    if (prof.n != 3) throw UnsupportedDegree("orbital_gl3 requires a degree-3 profile");
    const BigInt& q = prof.q;
    const ExactRational term = ExactRational(residue_unit_count(prof)) / ExactRational((q - 1) * (q - 1)) * orbital_phi(prof);
    if (boost::multiprecision::denominator(term) != 1)
        throw InvariantViolation("non-integral orbital summand " + to_string(term) + " at p=" + q.str());
    return ipow(q, static_cast<unsigned>(prof.rho)) * (1 + boost::multiprecision::numerator(term));
}

inline BigInt orbital_value(const LocalProfile& prof) { return prof.n == 2 ? orbital_gl2(prof) : orbital_gl3(prof); }

inline OrbitalFactor orbital_factor(const LocalProfile& prof) {
    OrbitalFactor f;
    f.p = prof.p;
    f.s_length = prof.s_length;
    f.orbital_value = orbital_value(prof);
    ensure(f.orbital_value >= 1, "orbital value below one");
    f.normalized = ExactRational(f.orbital_value, ipow(prof.p, static_cast<unsigned>(prof.s_length)));
    return f;
}

/// Product over primes of O_p / p^{S_p}; only primes dividing disc(chi) can contribute.
inline OrbitalProduct global_orbital_product(const IntPolynomial& chi) {
    OrbitalProduct out;
    for (const auto& prof : ramified_primes(chi)) {
        out.factors.push_back(orbital_factor(prof));
        out.value *= out.factors.back().normalized;
    }
    return out;
}

}  // namespace orbcount
