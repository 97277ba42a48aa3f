#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "orbcount/bigint.hpp"
#include "orbcount/local_analysis.hpp"
#include "orbcount/orbital.hpp"
#include "orbcount/polynomial.hpp"
#include "orbcount/primes.hpp"

namespace orbcount {

enum class InvariantSource { builtin_quadratic, residue_estimate, file, remote };

inline std::string to_string(InvariantSource s) {
    switch (s) {
        case InvariantSource::builtin_quadratic: return "builtin-quadratic";
        case InvariantSource::residue_estimate: return "residue-estimate";
        case InvariantSource::file: return "file";
        case InvariantSource::remote: return "remote";
    }
    return "?";
}

inline InvariantSource invariant_source_from_string(const std::string& s) {
    for (auto v : {InvariantSource::builtin_quadratic, InvariantSource::residue_estimate, InvariantSource::file,
                   InvariantSource::remote})
        if (to_string(v) == s) return v;
    throw ParseError("unknown invariant source '" + s + "'");
}

struct FieldInvariants {
    BigInt field_discriminant;
    int degree = 0;
    std::optional<BigInt> class_number;
    std::optional<double> regulator;
    double hr_product = 0;
    InvariantSource source = InvariantSource::builtin_quadratic;

    /// hR / sqrt(Delta_K), the quantity the leading constant consumes.
    double field_factor() const { return hr_product / std::sqrt(to_double(ExactRational(field_discriminant))); }
};

struct AsymptoticPrediction {
    int n = 0;
    int m = 0;  // exponent n(n-1)/2
    double coefficient = 0;
    double archimedean_constant = 0;
    double zeta_factor = 0;
    double field_factor = 0;
    ExactRational orbital_product = 1;
    int extra_classes = 0;
    int branch = 1;
};

struct ExtensionClass {
    bool galois = false;
    int branch = 1;
};

/// Fundamental unit (X + Y sqrt(D))/2 of the real quadratic order of discriminant D.
struct QuadraticUnit {
    BigInt x;
    BigInt y;
    int norm = 1;
};

// Special values

inline double zeta3() {
    // zeta(3) = 5/2 sum_{k>=1} (-1)^{k+1} / (k^3 binom(2k, k))
    long double sum = 0, binom = 1;
    for (int k = 1; k <= 40; ++k) {
        binom = binom * (2 * k) * (2 * k - 1) / (static_cast<long double>(k) * k);
        const long double term = 1.0L / (static_cast<long double>(k) * k * k * binom);
        sum += (k % 2 ? term : -term);
    }
    return static_cast<double>(2.5L * sum);
}

inline double riemann_zeta_int(int s) {
    if (s == 2) return std::numbers::pi * std::numbers::pi / 6.0;
    if (s == 3) return zeta3();
    if (s < 2) throw ArgumentError("zeta(s) needs s >= 2");
    // Euler-Maclaurin free fallback: direct sum plus integral tail.
    long double sum = 0;
    const int N = 1000;
    for (int k = 1; k < N; ++k) sum += std::pow(static_cast<long double>(k), -s);
    sum += std::pow(static_cast<long double>(N), 1 - s) / (s - 1) + 0.5L * std::pow(static_cast<long double>(N), -s);
    return static_cast<double>(sum);
}

/// Volume of the unit ball in R^m.
inline double unit_ball_volume(int m) {
    return std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
}

// Field discriminant and extension type

inline BigInt field_discriminant(const IntPolynomial& chi) {
    if (chi.degree() < 2 || chi.degree() > 3) throw UnsupportedDegree("field_discriminant supports degrees 2 and 3");
    BigInt d = discriminant(chi);
    for (const auto& prof : ramified_primes(chi)) {
        const BigInt sq = ipow(prof.p, static_cast<unsigned>(2 * prof.s_length));
        ensure(d % sq == 0, "index square does not divide the discriminant");
        d /= sq;
    }
    return d;
}

inline ExtensionClass classify_extension(const IntPolynomial& chi) {
    if (chi.degree() == 2) return {true, 1};
    if (chi.degree() == 3) return {is_perfect_square(discriminant(chi)), 1};
    throw UnsupportedDegree("classify_extension supports degrees 2 and 3");
}

// Real quadratic fields

inline bool is_fundamental_discriminant(const BigInt& d) {
    if (d == 1 || d == 0) return false;
    auto squarefree = [](const BigInt& m) {
        for (const auto& [p, e] : factorize(m))
            if (e > 1) return false;
        return true;
    };
    const BigInt r = mod(d, BigInt(4));
    if (r == 1) return squarefree(d);
    if (r != 0) return false;
    const BigInt m = d / 4;
    const BigInt rm = mod(m, BigInt(4));
    return (rm == 2 || rm == 3) && squarefree(m);
}

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

}  // namespace detail

/// Smallest unit > 1 of the order of discriminant D, from the continued fraction of (t + sqrt D)/2.
inline QuadraticUnit fundamental_unit(const BigInt& D) {
    if (D <= 0 || is_perfect_square(D)) throw ArgumentError("discriminant must be positive and not a square");
    const BigInt t = mod(D, BigInt(4));
    if (t != 0 && t != 1) throw ArgumentError("not a quadratic discriminant: " + D.str());
    const BigInt s = isqrt(D);
    const BigInt nw = (t * t - D) / 4;  // norm of omega
    BigInt P = t, Q = 2;
    BigInt p_prev = 0, p_cur = 1, q_prev = 1, q_cur = 0;
    for (int iter = 0; iter < 1000000; ++iter) {
        const BigInt a = Q > 0 ? detail::floor_div(P + s, Q) : detail::floor_div(P + s + 1, Q);
        const BigInt pn = a * p_cur + p_prev, qn = a * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = pn;
        q_prev = q_cur;
        q_cur = qn;
        const BigInt norm = p_cur * p_cur - p_cur * q_cur * t + q_cur * q_cur * nw;
        if (norm == 1 || norm == -1) {
            QuadraticUnit u{2 * p_cur - q_cur * t, q_cur, norm == 1 ? 1 : -1};
            if (u.x < 0) u.x = -u.x;
            ensure(u.x * u.x - D * u.y * u.y == 4 * u.norm, "continued fraction produced a non-unit");
            return u;
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw InvariantViolation("continued fraction did not reach a unit");
}

inline double quadratic_regulator(const QuadraticUnit& u, const BigInt& D) {
    if (fits_int64(u.x) && u.x < BigInt(1) << 60) {
        const long double x = u.x.convert_to<long double>(), y = u.y.convert_to<long double>();
        return static_cast<double>(std::log((x + y * std::sqrt(static_cast<long double>(D.convert_to<long double>()))) / 2));
    }
    // eps = X - N/eps and eps ~ X.
    return log_big(u.x) - static_cast<double>(u.norm) / std::exp(2 * log_big(u.x));
}

/// Narrow class number: number of cycles of reduced primitive forms of discriminant D.
inline BigInt narrow_class_number(const BigInt& D) {
    const BigInt s = isqrt(D);
    using Form = std::tuple<BigInt, BigInt, BigInt>;
    auto reduced = [&](const BigInt& a, const BigInt& b) {
        // 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b
        const BigInt a2 = 2 * abs(a);
        return b > 0 && b <= s && a2 > s - b && a2 <= s + b;
    };
    std::set<Form> forms;
    for (BigInt b = mod(D, BigInt(2)); b <= s; b += 2) {
        if (b == 0) continue;
        const BigInt k = (D - b * b) / 4;
        if (k <= 0) continue;
        for (const auto& a_pos : divisors(k))
            for (const BigInt& a : {a_pos, BigInt(-a_pos)}) {
                const BigInt c = -k / a;
                if (!reduced(a, b)) continue;
                if (gcd(gcd(abs(a), b), abs(c)) != 1) continue;
                forms.emplace(a, b, c);
            }
    }
    auto rho = [&](const Form& f) {
        const auto& [a, b, c] = f;
        // b' = -b mod 2|c|, in (sqrt D - 2|c|, sqrt D]
        const BigInt m = 2 * abs(c);
        BigInt bp = mod(-b, m);
        const BigInt lo = s - m;  // strict lower bound s - 2|c| < b' (sqrt D irrational)
        while (bp <= lo) bp += m;
        while (bp - m > lo) bp -= m;
        const BigInt ap = (bp * bp - D) / (4 * c);
        return Form{c, bp, ap};
    };
    BigInt cycles = 0;
    std::set<Form> seen;
    for (const auto& f : forms) {
        if (seen.count(f)) continue;
        ++cycles;
        Form cur = f;
        while (seen.insert(cur).second) {
            cur = rho(cur);
            ensure(forms.count(cur) == 1, "rho left the set of reduced forms");
        }
    }
    return cycles;
}

inline FieldInvariants quadratic_invariants(const BigInt& D) {
    if (D <= 0 || is_perfect_square(D)) throw ArgumentError("quadratic_invariants needs a positive nonsquare discriminant");
    if (!is_fundamental_discriminant(D)) throw ArgumentError(D.str() + " is not a fundamental discriminant");
    const QuadraticUnit u = fundamental_unit(D);
    const BigInt h_plus = narrow_class_number(D);
    const BigInt h = u.norm == -1 ? h_plus : h_plus / 2;
    FieldInvariants inv;
    inv.field_discriminant = D;
    inv.degree = 2;
    inv.class_number = h;
    inv.regulator = quadratic_regulator(u, D);
    inv.hr_product = h.convert_to<double>() * *inv.regulator;
    inv.source = InvariantSource::builtin_quadratic;
    return inv;
}

// Residue of zeta_K at s = 1 by counting ideals

namespace detail {

/// Number of distinct roots of a monic polynomial of degree <= 3 modulo a word-size prime.
inline int roots_mod_p_u64(const std::vector<std::uint64_t>& f_in, std::uint64_t p) {
    using u64 = std::uint64_t;
    using Poly = std::vector<u64>;
    auto trim = [](Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    };
    auto polymod = [&](Poly a, const Poly& b) {
        trim(a);
        const u64 inv = powmod64(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            const u64 f = mulmod64(a.back(), inv, p);
            const std::size_t sh = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] = (a[sh + i] + p - mulmod64(f, b[i], p)) % p;
            trim(a);
        }
        return a;
    };
    auto mulmod_poly = [&](const Poly& a, const Poly& b, const Poly& f) {
        if (a.empty() || b.empty()) return Poly{};
        Poly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod64(a[i], b[j], p)) % p;
        return polymod(r, f);
    };
    Poly f = f_in;
    for (auto& c : f) c %= p;
    trim(f);
    if (f.size() <= 1) return 0;
    Poly res{1}, base = polymod(Poly{0, 1}, f);
    for (u64 e = p; e; e >>= 1) {
        if (e & 1) res = mulmod_poly(res, base, f);
        base = mulmod_poly(base, base, f);
    }
    // gcd(x^p - x, f)
    if (res.size() < 2) res.resize(2, 0);
    res[1] = (res[1] + p - 1) % p;
    trim(res);
    Poly a = f, b = res;
    while (!b.empty()) {
        Poly r = polymod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<int>(a.size()) - 1;
}

}  // namespace detail

/// Estimate of hR/sqrt(Delta_K) from the count of ideals of norm <= B.
inline double zeta_residue_estimate(const IntPolynomial& chi, std::uint32_t bound, double* residue_out = nullptr) {
    if (bound < 1000) throw ArgumentError("residue estimate needs B >= 1000");
    const int n = chi.degree();
    if (n < 2 || n > 3) throw UnsupportedDegree("residue estimate supports degrees 2 and 3");
    if (!is_totally_real(chi)) throw HypothesisViolation("K is not totally real");
    const auto& co = chi.coeffs();

    // Residue degrees of the primes above p, special primes from the local profile.
    std::map<std::uint64_t, std::vector<int>> special;
    for (const auto& prof : ramified_primes(chi)) {
        if (prof.p > bound) continue;
        std::vector<int> fs;
        for (const auto& lf : prof.factors) fs.push_back(lf.residue_degree);
        special[prof.p.convert_to<std::uint64_t>()] = fs;
    }

    std::vector<std::uint32_t> spf(bound + 1, 0);
    for (std::uint32_t i = 2; i <= bound; ++i)
        if (spf[i] == 0)
            for (std::uint64_t j = i; j <= bound; j += i)
                if (spf[j] == 0) spf[j] = i;

    // a(p^k) = number of (k_i) with sum f_i k_i = k.
    auto local_counts = [&](const std::vector<int>& fs, int kmax) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(kmax) + 1, 0);
        c[0] = 1;
        for (int fi : fs)
            for (int k = fi; k <= kmax; ++k) c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - fi)];
        return c;
    };
    std::vector<std::uint32_t> a(bound + 1, 0);
    a[1] = 1;
    std::uint64_t total = 1;
    std::vector<int> fs;
    for (std::uint32_t m = 2; m <= bound; ++m) {
        const std::uint32_t p = spf[m];
        std::uint32_t rest = m;
        int k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        if (rest != 1) {
            a[m] = a[rest] * a[m / rest];
        } else {
            auto it = special.find(p);
            if (it != special.end()) {
                fs = it->second;
            } else {
                std::vector<std::uint64_t> fp;
                for (const auto& c : co) fp.push_back(mod(c, BigInt(p)).convert_to<std::uint64_t>());
                const int r = detail::roots_mod_p_u64(fp, p);
                fs.assign(static_cast<std::size_t>(r), 1);
                if (n - r > 0) fs.push_back(n - r);
            }
            a[m] = static_cast<std::uint32_t>(local_counts(fs, k)[static_cast<std::size_t>(k)]);
        }
        total += a[m];
    }
    const double residue = static_cast<double>(total) / static_cast<double>(bound);
    if (residue_out) *residue_out = residue;
    return residue / std::pow(2.0, n - 1);
}

/// FieldInvariants carrying only hR, taken from the residue estimate.
inline FieldInvariants residue_estimate_invariants(const IntPolynomial& chi, std::uint32_t bound = 1000000) {
    FieldInvariants inv;
    inv.field_discriminant = field_discriminant(chi);
    inv.degree = chi.degree();
    inv.hr_product = zeta_residue_estimate(chi, bound) * std::sqrt(to_double(ExactRational(inv.field_discriminant)));
    inv.source = InvariantSource::residue_estimate;
    return inv;
}

// Leading constant

inline double archimedean_constant(int n) {
    const int m = n * (n - 1) / 2;
    double denom = 1;
    for (int i = 1; i <= n; ++i) denom *= std::tgamma(i / 2.0);
    return std::pow(2.0, n - 1) * unit_ball_volume(m) * std::pow(std::numbers::pi, n * (n + 1) / 4.0) / denom;
}

inline double zeta_factor(int n) {
    double z = 1;
    for (int i = 2; i <= n; ++i) z /= riemann_zeta_int(i);
    return z;
}

inline AsymptoticPrediction assemble_leading_constant(const IntPolynomial& chi, const FieldInvariants& inv,
                                                      const OrbitalProduct& orb, int branch) {
    const int n = chi.degree();
    if (inv.degree != 0 && inv.degree != n) throw ArgumentError("invariants are for a field of a different degree");
    if (branch != 1 && branch != 2) throw ArgumentError("branch must be 1 or 2");
    if (!(inv.hr_product > 0)) throw ArgumentError("hR must be positive");
    AsymptoticPrediction a;
    a.n = n;
    a.m = n * (n - 1) / 2;
    a.branch = branch;
    a.extra_classes = branch == 2 ? n - 1 : 0;
    a.archimedean_constant = archimedean_constant(n);
    a.zeta_factor = zeta_factor(n);
    a.field_factor = inv.field_factor();
    a.orbital_product = orb.value;
    a.coefficient = a.archimedean_constant * a.zeta_factor * a.field_factor *
                    (to_double(orb.value) + static_cast<double>(a.extra_classes));
    return a;
}

/// Completed zeta ratio Lambda(s) = pi^{-s} Gamma(s) zeta(2s).
inline double completed_lambda(double s) {
    return std::pow(std::numbers::pi, -s) * std::tgamma(s) * riemann_zeta_int(static_cast<int>(std::lround(2 * s)));
}

inline double ems_reference_constant(const IntPolynomial& chi, const FieldInvariants& inv) {
    const int n = chi.degree();
    for (const auto& prof : ramified_primes(chi))
        if (prof.s_length != 0)
            throw PreconditionError("reference constant needs Z[x]/(chi) maximal; S_" + prof.p.str() + " = " +
                                    std::to_string(prof.s_length));
    const int m = n * (n - 1) / 2;
    double denom = std::sqrt(to_double(ExactRational(discriminant(chi))));
    for (int k = 2; k <= n; ++k) denom *= completed_lambda(k / 2.0);
    return std::pow(2.0, n - 1) * inv.hr_product * unit_ball_volume(m) / denom;
}

}  // namespace orbcount
