#pragma once

// p-maximal order by Round 2: with I the p-radical of O, replace O by
// End(I) = {x : xI ⊆ I} until the ring stops growing.

#include <algorithm>
#include <numeric>
#include <vector>

#include "orbcount/bigint.hpp"
#include "orbcount/linalg.hpp"
#include "orbcount/polynomial.hpp"
#include "orbcount/primes.hpp"

namespace orbcount {

/// An order of Q[x]/(chi) given by a basis in power-basis coordinates.
struct OrderBasis {
    IntPolynomial chi;
    RatMatrix basis;   // row i = w_i in terms of 1, theta, ..., theta^{n-1}
    RatMatrix inverse;  // power coordinates -> basis coordinates
    std::vector<IntMatrix> mult;  // mult[i][j] = coordinates of w_i w_j

    int n() const { return chi.degree(); }

    std::vector<BigInt> coords(const std::vector<ExactRational>& power) const {
        auto c = row_times(power, inverse);
        std::vector<BigInt> out;
        for (const auto& x : c) {
            ensure(boost::multiprecision::denominator(x) == 1, "element is not in the order");
            out.push_back(boost::multiprecision::numerator(x));
        }
        return out;
    }

    /// Matrix of multiplication by u (row j = coordinates of w_j u).
    IntMatrix multiplication_matrix(const std::vector<BigInt>& u) const {
        const int d = n();
        IntMatrix m(static_cast<std::size_t>(d), std::vector<BigInt>(static_cast<std::size_t>(d), BigInt(0)));
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) {
                if (u[static_cast<std::size_t>(i)] == 0) continue;
                for (int k = 0; k < d; ++k)
                    m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] +=
                        u[static_cast<std::size_t>(i)] * mult[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            }
        return m;
    }

    std::vector<BigInt> one() const {
        std::vector<ExactRational> e(static_cast<std::size_t>(n()), ExactRational(0));
        e[0] = 1;
        return coords(e);
    }

    std::vector<BigInt> multiply(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
        return row_times(b, multiplication_matrix(a));
    }
};

namespace detail {

/// Product in Q[x]/(chi) on power-basis coordinates.
inline std::vector<ExactRational> power_multiply(const std::vector<ExactRational>& a, const std::vector<ExactRational>& b,
                                                 const IntPolynomial& chi) {
    const int n = chi.degree();
    std::vector<ExactRational> prod(static_cast<std::size_t>(2 * n - 1), ExactRational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    for (int k = 2 * n - 2; k >= n; --k) {
        const ExactRational c = prod[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        for (int i = 0; i < n; ++i) prod[static_cast<std::size_t>(k - n + i)] -= c * ExactRational(chi[i]);
        prod[static_cast<std::size_t>(k)] = 0;
    }
    prod.resize(static_cast<std::size_t>(n));
    return prod;
}

inline OrderBasis make_order(const IntPolynomial& chi, RatMatrix basis) {
    OrderBasis o{chi, basis, rational_inverse(basis), {}};
    const std::size_t n = basis.size();
    o.mult.assign(n, IntMatrix(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) o.mult[i][j] = o.coords(power_multiply(basis[i], basis[j], chi));
    return o;
}

inline std::vector<BigInt> mod_vec(std::vector<BigInt> v, const BigInt& p) {
    for (auto& x : v) x = mod(x, p);
    return v;
}

inline std::vector<BigInt> power_mod(const OrderBasis& o, std::vector<BigInt> x, BigInt e, const BigInt& p) {
    std::vector<BigInt> r = mod_vec(o.one(), p);
    while (e > 0) {
        if (e & 1) r = mod_vec(o.multiply(r, x), p);
        x = mod_vec(o.multiply(x, x), p);
        e >>= 1;
    }
    return r;
}

/// Matrix of x -> x^e - s x on O/pO (Frobenius powers are additive in characteristic p).
inline IntMatrix frobenius_matrix(const OrderBasis& o, const BigInt& e, const BigInt& p, int shift) {
    const int n = o.n();
    IntMatrix m;
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> unit(static_cast<std::size_t>(n), BigInt(0));
        unit[static_cast<std::size_t>(i)] = 1;
        auto row = power_mod(o, unit, e, p);
        row[static_cast<std::size_t>(i)] = mod(row[static_cast<std::size_t>(i)] - shift, p);
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace detail

/// Z[theta] with basis 1, theta, ..., theta^{n-1}.
inline OrderBasis equation_order(const IntPolynomial& chi) {
    const std::size_t n = static_cast<std::size_t>(chi.degree());
    RatMatrix id(n, std::vector<ExactRational>(n, ExactRational(0)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return detail::make_order(chi, id);
}

/// Basis (in O-coordinates) of the p-radical of O, as a full-rank lattice.
inline IntMatrix p_radical(const OrderBasis& o, const BigInt& p) {
    const int n = o.n();
    BigInt e = p;
    while (e < n) e *= p;
    IntMatrix gens = left_kernel_mod_p(detail::frobenius_matrix(o, e, p, 0), p);
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> v(static_cast<std::size_t>(n), BigInt(0));
        v[static_cast<std::size_t>(i)] = p;
        gens.push_back(std::move(v));
    }
    return hermite_normal_form(std::move(gens), static_cast<std::size_t>(n));
}

struct MaximalOrderResult {
    int index_valuation = 0;
    std::vector<int> residue_degrees;  // ascending
    OrderBasis order;
};

/// Residue degrees of the primes above p in a p-maximal order.
inline std::vector<int> residue_degrees(const OrderBasis& o, const BigInt& p) {
    const int n = o.n();
    std::vector<int> fixed_dims;
    BigInt e = 1;
    for (int j = 1; j <= n; ++j) {
        e *= p;
        fixed_dims.push_back(static_cast<int>(left_kernel_mod_p(detail::frobenius_matrix(o, e, p, 1), p).size()));
    }
    // dim of the Frobenius^j fixed algebra is sum_i gcd(j, f_i); search the multisets with sum <= n.
    std::vector<int> found;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int min_f, int budget) -> void {
        bool match = !cur.empty();
        for (int j = 1; j <= n && match; ++j) {
            int s = 0;
            for (int f : cur) s += std::gcd(j, f);
            match = s == fixed_dims[static_cast<std::size_t>(j - 1)];
        }
        if (match) {
            ensure(found.empty(), "ambiguous residue degree pattern");
            found = cur;
        }
        for (int f = min_f; f <= budget; ++f) {
            cur.push_back(f);
            self(self, f, budget - f);
            cur.pop_back();
        }
    };
    rec(rec, 1, n);
    ensure(!found.empty(), "no residue degree pattern fits the Frobenius data");
    return found;
}

/// Enlarges Z[theta] at p until it is p-maximal.
inline MaximalOrderResult maximal_order_at_p(const IntPolynomial& chi, const BigInt& p) {
    if (chi.degree() < 2 || chi.degree() > 3) throw UnsupportedDegree("maximal_order_at_p supports degrees 2 and 3");
    if (!is_prime(p)) throw ArgumentError(p.str() + " is not prime");
    const std::size_t n = static_cast<std::size_t>(chi.degree());
    OrderBasis o = equation_order(chi);
    int index = 0;
    for (;;) {
        const IntMatrix rad = p_radical(o, p);
        const RatMatrix rad_inv = [&] {
            RatMatrix r(n, std::vector<ExactRational>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) r[i][j] = ExactRational(rad[i][j]);
            return rational_inverse(r);
        }();
        // y in O with y I ⊆ p I: linear over F_p in y mod p.
        IntMatrix cond;
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<BigInt> unit(n, BigInt(0));
            unit[a] = 1;
            std::vector<BigInt> row;
            for (std::size_t k = 0; k < n; ++k) {
                const auto prod = o.multiply(unit, rad[k]);
                std::vector<ExactRational> pr(prod.begin(), prod.end());
                for (const auto& c : row_times(pr, rad_inv)) {
                    ensure(boost::multiprecision::denominator(c) == 1, "radical is not an ideal");
                    row.push_back(mod(boost::multiprecision::numerator(c), p));
                }
            }
            cond.push_back(std::move(row));
        }
        IntMatrix gens = left_kernel_mod_p(cond, p);
        if (gens.empty()) break;
        index += static_cast<int>(gens.size());
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<BigInt> v(n, BigInt(0));
            v[i] = p;
            gens.push_back(std::move(v));
        }
        const IntMatrix u = hermite_normal_form(std::move(gens), n);
        RatMatrix next(n, std::vector<ExactRational>(n, ExactRational(0)));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) next[r][j] += ExactRational(u[r][i], p) * o.basis[i][j];
        o = detail::make_order(chi, next);
    }
    MaximalOrderResult res{index, residue_degrees(o, p), o};
    return res;
}

}  // namespace orbcount
