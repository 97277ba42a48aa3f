#pragma once

// Splitting of chi over Q_p for degrees 2 and 3.
//
// The repeated residue root a (if any) is moved to 0 by x -> x + a; the
// Newton polygon of the translated polynomial then describes every factor
// that lives in that residue class. Sides whose residual polynomial has a
// repeated root r are straightened by x -> x + r p^h until every residual
// polynomial is squarefree (for degree <= 3 this only happens on sides of
// integer slope). At that point Ore's theorem gives the index as the number
// of lattice points under the polygon, and each residual factor gives one
// local factor with e = slope denominator and f = its degree.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "orbcount/bigint.hpp"
#include "orbcount/fp_poly.hpp"
#include "orbcount/polynomial.hpp"
#include "orbcount/primes.hpp"

namespace orbcount {

struct LocalFactor {
    int residue_degree = 1;      // f
    int ramification_index = 1;  // e
    int local_length = 0;        // S_p of this factor
    int degree() const { return residue_degree * ramification_index; }
    friend bool operator==(const LocalFactor&, const LocalFactor&) = default;
};

enum class SplittingTag {
    split_complete,
    field_unramified,
    field_ramified,
    mixed_quadratic_unramified,
    mixed_quadratic_ramified,
};

inline std::string to_string(SplittingTag t) {
    switch (t) {
        case SplittingTag::split_complete: return "split-complete";
        case SplittingTag::field_unramified: return "field-unramified";
        case SplittingTag::field_ramified: return "field-ramified";
        case SplittingTag::mixed_quadratic_unramified: return "mixed-quadratic-unramified";
        case SplittingTag::mixed_quadratic_ramified: return "mixed-quadratic-ramified";
    }
    return "?";
}

inline SplittingTag splitting_tag_from_string(const std::string& s) {
    for (auto t : {SplittingTag::split_complete, SplittingTag::field_unramified, SplittingTag::field_ramified,
                   SplittingTag::mixed_quadratic_unramified, SplittingTag::mixed_quadratic_ramified})
        if (to_string(t) == s) return t;
    throw ParseError("unknown splitting tag '" + s + "'");
}

struct LocalProfile {
    BigInt p;
    BigInt q;
    int n = 0;
    std::vector<LocalFactor> factors;
    int s_length = 0;
    int delta = 0;
    int d = 0;  // floor(delta / 3); meaningful for n = 3 only
    int rho = 0;
    SplittingTag tag = SplittingTag::split_complete;

    bool is_field() const { return factors.size() == 1; }

    /// Re-asserts the structural identities tying the fields together.
    void validate() const {
        int deg = 0, sum_len = 0, max_len = 0;
        for (const auto& f : factors) {
            ensure(f.residue_degree >= 1 && f.ramification_index >= 1 && f.local_length >= 0, "bad local factor");
            deg += f.degree();
            sum_len += f.local_length;
            max_len = std::max(max_len, f.local_length);
        }
        ensure(deg == n, "factor degrees do not sum to n");
        ensure(delta == max_len, "delta is not the maximal factor length");
        ensure(s_length == sum_len + rho, "S is not the sum of factor lengths plus rho");
        const int expected_rho = factors.size() == 1 ? 0 : factors.size() == 2 ? s_length - delta : s_length;
        ensure(rho == expected_rho, "rho does not match the factor-count table");
        ensure(d == (n == 3 ? delta / 3 : 0), "d is not floor(delta/3)");
        ensure(q == p, "residue cardinality must equal p over Q");
    }
};

namespace detail {

struct PolygonSide {
    int x0 = 0;
    int y0 = 0;
    int length = 0;
    int drop = 0;
    int h = 0;  // reduced slope numerator
    int e = 1;  // reduced slope denominator
    std::vector<BigInt> residual;  // mod p, lowest first
};

/// Principal part of the p-adic Newton polygon of F on abscissae 0..k.
inline std::vector<PolygonSide> newton_sides(const ZPoly& F, int k, const BigInt& p) {
    struct Pt {
        int x, y;
    };
    std::vector<Pt> pts;
    for (int i = 0; i <= k; ++i)
        if (F[i] != 0) pts.push_back({i, valuation(F[i], p)});
    ensure(!pts.empty() && pts.front().x == 0 && pts.back().x == k && pts.back().y == 0,
           "newton_sides: polygon endpoints malformed");
    std::vector<Pt> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const Pt& o = hull[hull.size() - 2];
            const Pt& a = hull.back();
            const long cross = static_cast<long>(a.x - o.x) * (pt.y - o.y) - static_cast<long>(a.y - o.y) * (pt.x - o.x);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    std::vector<PolygonSide> sides;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        PolygonSide side;
        side.x0 = hull[s].x;
        side.y0 = hull[s].y;
        side.length = hull[s + 1].x - hull[s].x;
        side.drop = hull[s].y - hull[s + 1].y;
        const int g = std::gcd(side.length, side.drop);
        side.h = side.drop / g;
        side.e = side.length / g;
        for (int j = 0; j <= g; ++j) {
            const int xi = side.x0 + j * side.e;
            const int yi = side.y0 - j * side.h;
            BigInt c = 0;
            if (F[xi] != 0 && valuation(F[xi], p) == yi) c = mod(F[xi] / ipow(p, static_cast<unsigned>(yi)), p);
            side.residual.push_back(c);
        }
        sides.push_back(std::move(side));
    }
    return sides;
}

/// Lattice points (x >= 1, y >= 1) on or under a single side of length l and slope h/e.
inline int side_index(int l, int h, int e) {
    int total = 0;
    for (int j = 1; j < l; ++j) total += (h * j) / e;
    return total;
}

inline SplittingTag classify_tag(int n, const std::vector<LocalFactor>& factors) {
    if (static_cast<int>(factors.size()) == n) return SplittingTag::split_complete;
    if (factors.size() == 1)
        return factors[0].ramification_index == 1 ? SplittingTag::field_unramified : SplittingTag::field_ramified;
    for (const auto& f : factors)
        if (f.degree() == 2)
            return f.ramification_index == 1 ? SplittingTag::mixed_quadratic_unramified
                                             : SplittingTag::mixed_quadratic_ramified;
    throw InvariantViolation("unclassifiable factor pattern");
}

/// Root of chi congruent to a simple residue root b, to precision p^precision.
inline BigInt hensel_lift_root(const ZPoly& chi, const BigInt& b, const BigInt& p, int precision) {
    const ZPoly d = chi.derivative();
    BigInt root = b;
    BigInt modulus = p;
    int reached = 1;
    while (reached < precision) {
        reached = std::min(precision, 2 * reached);
        modulus = ipow(p, static_cast<unsigned>(reached));
        const BigInt fx = mod(chi.eval(root), modulus);
        const BigInt dx = mod(d.eval(root), modulus);
        root = mod(root - fx * modinv(dx, modulus), modulus);
    }
    return root;
}

}  // namespace detail

/// Module length of a quadratic order of discriminant disc at p (disc known exactly,
/// or modulo p^M with M >= v_p(disc) + 3).
inline int quadratic_local_length(const BigInt& disc, const BigInt& p) {
    const int v = valuation(disc, p);
    if (p != 2) return v / 2;
    const BigInt u = mod(disc / ipow(2, static_cast<unsigned>(v)), BigInt(8));
    if (v % 2 == 1) {
        ensure(v >= 3, "2-adic discriminant with valuation 1");
        return (v - 3) / 2;
    }
    return (u % 4 == 1) ? v / 2 : (v - 2) / 2;
}

/// Dedekind's criterion: true iff p does not divide [O_K : Z[x]/(chi)].
inline bool dedekind_criterion(const IntPolynomial& chi, const BigInt& p) {
    const FpPoly bar(chi.poly(), p);
    auto rep = fp_repeated_root(bar);
    if (!rep) return true;
    const auto [a, k] = *rep;
    // radical g = (x - a) * H, cofactor h = (x - a)^(k-1)
    FpPoly cof = bar;
    const FpPoly lin(std::vector<BigInt>{mod(-a, p), 1}, p);
    for (int i = 0; i < k; ++i) cof = cof.divmod(lin).first;
    const FpPoly g = lin * cof;
    FpPoly h(std::vector<BigInt>{1}, p);
    for (int i = 0; i + 1 < k; ++i) h = h * lin;
    const ZPoly gl(g.coeffs()), hl(h.coeffs());
    const ZPoly prod = gl * hl;
    std::vector<BigInt> f;
    for (int i = 0; i <= chi.degree(); ++i) {
        const BigInt diff = chi[i] - prod[i];
        ensure(diff % p == 0, "dedekind_criterion: lift mismatch");
        f.push_back(diff / p);
    }
    return FpPoly(f, p).eval(a) != 0;
}

inline LocalProfile local_splitting(const IntPolynomial& chi, const BigInt& p) {
    const int n = chi.degree();
    if (n != 2 && n != 3)
        throw UnsupportedDegree("local analysis implemented for degrees 2 and 3; got " + std::to_string(n));
    if (!is_prime(p)) throw ArgumentError(p.str() + " is not prime");

    LocalProfile prof;
    prof.p = p;
    prof.q = p;
    prof.n = n;

    const FpPoly bar(chi.poly(), p);
    const auto rep = fp_repeated_root(bar);
    if (!rep) {
        for (int f : fp_factor_degrees_squarefree(bar)) prof.factors.push_back({f, 1, 0});
    } else {
        const auto [a, k] = *rep;
        if (n - k == 1) prof.factors.push_back({1, 1, 0});

        ZPoly F = chi.poly().shifted(a);
        const int max_iter = 8 * (valuation(discriminant(chi), p) + 2);
        std::vector<detail::PolygonSide> sides;
        for (int iter = 0;; ++iter) {
            ensure(iter < max_iter, "local_splitting: polygon refinement did not terminate");
            sides = detail::newton_sides(F, k, p);
            bool refined = false;
            for (const auto& side : sides) {
                const FpPoly psi(side.residual, p);
                if (auto rr = fp_repeated_root(psi)) {
                    ensure(side.e == 1, "non-regular side with fractional slope");
                    F = F.shifted(rr->first * ipow(p, static_cast<unsigned>(side.h)));
                    refined = true;
                    break;
                }
            }
            if (!refined) break;
        }

        struct Principal {
            int length;
            ExactRational slope;
        };
        std::vector<Principal> principal;
        for (const auto& side : sides) {
            for (int f : fp_factor_degrees_squarefree(FpPoly(side.residual, p))) {
                const int l = side.e * f;
                prof.factors.push_back({f, side.e, detail::side_index(l, side.h, side.e)});
                principal.push_back({l, ExactRational(side.h, side.e)});
            }
        }
        int s = 0;
        for (const auto& side : sides) {
            for (int x = std::max(1, side.x0 + 1); x <= side.x0 + side.length && x < k; ++x)
                s += (side.y0 * side.length - (x - side.x0) * side.drop) / side.length;
        }
        ExactRational rho = 0;
        for (std::size_t i = 0; i < principal.size(); ++i)
            for (std::size_t j = i + 1; j < principal.size(); ++j)
                rho += ExactRational(principal[i].length * principal[j].length) *
                       std::min(principal[i].slope, principal[j].slope);
        ensure(boost::multiprecision::denominator(rho) == 1, "rho is not integral");
        prof.s_length = s;
        prof.rho = boost::multiprecision::numerator(rho).convert_to<int>();

        // Cross-checks against closed forms on Hensel-lifted data.
        if (n == 2) {
            ensure(quadratic_local_length(discriminant(chi), p) == s, "quadratic closed form disagrees with polygon");
        } else if (k == 2) {
            const int precision = 2 * valuation(discriminant(chi), p) + 1 + 3;
            const BigInt pm = ipow(p, static_cast<unsigned>(precision));
            FpPoly cof = bar;
            const FpPoly lin(std::vector<BigInt>{mod(-a, p), 1}, p);
            cof = cof.divmod(lin).first.divmod(lin).first;
            const BigInt b = mod(-cof.monic()[0], p);
            const BigInt beta = detail::hensel_lift_root(chi.poly(), b, p, precision);
            // chi = (x - beta) (x^2 + g1 x + g0) mod p^precision
            const BigInt g1 = mod(chi[2] + beta, pm);
            const BigInt g0 = mod(chi[1] + beta * g1, pm);
            const BigInt g_at_beta = mod(beta * beta + g1 * beta + g0, pm);
            ensure(g_at_beta != 0, "Hensel precision too low for the factor resultant");
            int rho_res = valuation(g_at_beta, p);
            const BigInt gdisc = mod(g1 * g1 - 4 * g0, pm);
            ensure(gdisc != 0, "Hensel precision too low for the quadratic factor");
            if (principal.size() == 2) {
                rho_res += valuation(gdisc, p) / 2;
            } else {
                const auto& quad = prof.factors.back();
                ensure(quadratic_local_length(gdisc, p) == quad.local_length,
                       "quadratic factor length disagrees with the Hensel-lifted factor");
            }
            ensure(rho_res == prof.rho, "rho from resultants disagrees with polygon data");
        }
    }

    for (const auto& f : prof.factors) prof.delta = std::max(prof.delta, f.local_length);
    prof.d = n == 3 ? prof.delta / 3 : 0;
    prof.tag = detail::classify_tag(n, prof.factors);
    prof.validate();
    return prof;
}

inline int s_length(const IntPolynomial& chi, const BigInt& p) { return local_splitting(chi, p).s_length; }

/// #T(kappa): product over factors of q^(deg - f) (q^f - 1).
inline BigInt residue_unit_count(const LocalProfile& prof) {
    BigInt out = 1;
    for (const auto& f : prof.factors)
        out *= ipow(prof.q, static_cast<unsigned>(f.degree() - f.residue_degree)) *
               (ipow(prof.q, static_cast<unsigned>(f.residue_degree)) - 1);
    return out;
}

/// Primes dividing disc(chi), each with its local profile.
inline std::vector<LocalProfile> ramified_primes(const IntPolynomial& chi) {
    std::vector<LocalProfile> out;
    const BigInt disc = discriminant(chi);
    if (disc == 0) throw ArgumentError("polynomial is not squarefree: " + chi.to_string());
    for (const auto& [p, e] : factorize(disc)) out.push_back(local_splitting(chi, p));
    return out;
}

}  // namespace orbcount
