#pragma once

// Weighted count of gamma-stable lattices in K_p = Q_p[x]/(chi).
//
// Coordinates are taken in a p-maximal basis of O_K, gamma is the image of x.
// Every lattice class has a representative L with O_K L = O_K, unique up to
// O_K^x; the class weight [O_K^x : O_L^x] is the size of that orbit, so the
// census equals the number of such normalized gamma-stable lattices. All of
// them contain p^c O_K once Z_p[gamma] does, which makes the search finite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <set>
#include <vector>

#include "orbcount/bigint.hpp"
#include "orbcount/errors.hpp"
#include "orbcount/linalg.hpp"
#include "orbcount/maximal_order.hpp"

namespace orbcount {

struct LatticeClass {
    std::vector<std::vector<std::int64_t>> hnf_basis;
    int multiplier_length = 0;
    std::int64_t weight = 1;
};

struct CensusResult {
    BigInt census;
    int depth = 0;
    int min_depth = 0;
    std::vector<LatticeClass> classes;
};

namespace detail {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;

inline std::int64_t pmod(std::int64_t a, std::int64_t m) {
    a %= m;
    return a < 0 ? a + m : a;
}

/// Hermite form of rows + P Z^n, entries reduced into [0, pivot).
inline Mat hnf_mod(Mat rows, std::int64_t P) {
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    Mat h;
    for (std::size_t c = 0; c < n; ++c) {
        // Remaining rows span L ∩ span(e_c, ..., e_{n-1}), which contains P e_j for j >= c.
        for (auto& r : rows)
            for (std::size_t j = c; j < n; ++j) r[j] = pmod(r[j], P);
        Vec pe(n, 0);
        pe[c] = P;
        rows.push_back(pe);
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c]))) best = i;
            bool done = true;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][c] == 0) continue;
                const std::int64_t q = rows[i][c] / rows[best][c];
                for (std::size_t j = c; j < n; ++j) rows[i][j] = rows[i][j] - q * rows[best][j];
                for (std::size_t j = c + 1; j < n; ++j) rows[i][j] = pmod(rows[i][j], P);
                if (rows[i][c] != 0) done = false;
            }
            if (done) {
                Vec piv = rows[best];
                if (piv[c] < 0)
                    for (auto& x : piv) x = -x;
                for (std::size_t j = c + 1; j < n; ++j) piv[j] = pmod(piv[j], P);
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
                h.push_back(std::move(piv));
                break;
            }
        }
        std::erase_if(rows, [](const Vec& r) { return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; }); });
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const std::int64_t q = (h[i][j] - pmod(h[i][j], h[j][j])) / h[j][j];
            if (q == 0) continue;
            for (std::size_t k = j; k < n; ++k) h[i][k] -= q * h[j][k];
        }
    return h;
}

/// Membership in a lattice given by its Hermite form (which contains P Z^n).
inline bool contains(const Mat& h, Vec v, std::int64_t P) {
    const std::size_t n = h.size();
    for (auto& x : v) x = pmod(x, P);
    for (std::size_t c = 0; c < n; ++c) {
        if (v[c] % h[c][c] != 0) return false;
        const std::int64_t q = v[c] / h[c][c];
        for (std::size_t j = c; j < n; ++j) v[j] = pmod(v[j] - q * h[c][j], P);
    }
    return true;
}

inline Vec vec_times(const Vec& v, const Mat& m, std::int64_t P) {
    Vec r(m[0].size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = pmod(r[j] + v[i] * m[i][j], P);
    return r;
}

inline int index_valuation(const Mat& h, std::int64_t p) {
    int v = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::int64_t d = h[i][i]; d % p == 0; d /= p) ++v;
    return v;
}

/// All subspaces of F_p^n, each as a list of basis vectors in reduced echelon form.
inline std::vector<Mat> all_subspaces(std::size_t n, std::int64_t p) {
    std::vector<Mat> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> pivots;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) pivots.push_back(i);
        // Free entries: positions (r, j) with j > pivot r and j not a pivot column.
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            for (std::size_t j = pivots[r] + 1; j < n; ++j)
                if (!(mask & (1u << j))) free.emplace_back(r, j);
        std::size_t total = 1;
        for (std::size_t k = 0; k < free.size(); ++k) total *= static_cast<std::size_t>(p);
        for (std::size_t code = 0; code < total; ++code) {
            Mat b(pivots.size(), Vec(n, 0));
            for (std::size_t r = 0; r < pivots.size(); ++r) b[r][pivots[r]] = 1;
            std::size_t rest = code;
            for (auto [r, j] : free) {
                b[r][j] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(p));
                rest /= static_cast<std::size_t>(p);
            }
            out.push_back(std::move(b));
        }
    }
    return out;
}

inline std::int64_t to_i64(const BigInt& x) { return to_int64(x); }

}  // namespace detail

/// Smallest c with p^c O_K ⊆ Z_p[theta] (coordinates in the p-maximal basis).
inline int conductor_exponent(const OrderBasis& ok, const BigInt& p) {
    const std::size_t n = static_cast<std::size_t>(ok.n());
    IntMatrix gens;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<ExactRational> e(n, ExactRational(0));
        e[i] = 1;
        gens.push_back(ok.coords(e));
    }
    const IntMatrix h = hermite_normal_form(gens, n);
    RatMatrix hr(n, std::vector<ExactRational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) hr[i][j] = ExactRational(h[i][j]);
    const RatMatrix hinv = rational_inverse(hr);
    int c = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const ExactRational x = hinv[i][j];
            if (x == 0) continue;
            const BigInt den = boost::multiprecision::denominator(x);
            if (den != 1) c = std::max(c, valuation(den, p));
        }
    return c;
}

/// Orbital integral of gl_n at p as a weighted census of gamma-stable lattices.
inline CensusResult stable_lattice_census(const IntPolynomial& chi, const BigInt& p_big, int depth) {
    using namespace detail;
    if (chi.degree() < 2 || chi.degree() > 3) throw UnsupportedDegree("lattice census supports degrees 2 and 3");
    if (depth < 1) throw ArgumentError("census depth must be positive");
    const MaximalOrderResult mo = maximal_order_at_p(chi, p_big);
    const OrderBasis& ok = mo.order;
    const std::size_t n = static_cast<std::size_t>(ok.n());
    const int c0 = conductor_exponent(ok, p_big);
    if (depth < c0)
        throw DepthInsufficient("depth " + std::to_string(depth) + " is below the conductor exponent " + std::to_string(c0) +
                                "; retry with depth >= " + std::to_string(c0));
    const std::int64_t p = to_i64(p_big);
    if (static_cast<double>(n) * depth * std::log(static_cast<double>(p)) > std::log(1e9))
        throw ArgumentError("census modulus p^(n*depth) is too large for desk enumeration");
    std::int64_t P = 1;
    for (int i = 0; i < depth; ++i) P *= p;

    // Structure constants and gamma, reduced mod P.
    std::vector<Mat> T(n, Mat(n, Vec(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) T[i][j][k] = pmod(to_i64(mod(ok.mult[i][j][k], BigInt(P))), P);
    auto mult_matrix = [&](const Vec& u, std::int64_t m) {
        Mat r(n, Vec(n, 0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) r[j][k] = pmod(r[j][k] + u[i] * T[j][i][k], m);
        return r;
    };
    std::vector<ExactRational> theta(n, ExactRational(0));
    theta[1] = 1;
    Vec gamma_coords;
    for (const auto& x : ok.coords(theta)) gamma_coords.push_back(pmod(to_i64(mod(x, BigInt(P))), P));
    const Mat gamma = mult_matrix(gamma_coords, P);
    Vec one;
    for (const auto& x : ok.one()) one.push_back(pmod(to_i64(mod(x, BigInt(P))), P));

    auto stable = [&](const Mat& h) {
        for (const auto& r : h)
            if (!contains(h, vec_times(r, gamma, P), P)) return false;
        return true;
    };

    // All gamma-stable lattices between P Z^n and Z^n, reached through chains L ⊇ M ⊇ pL.
    const std::vector<Mat> subspaces = all_subspaces(n, p);
    Mat top(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) top[i][i] = 1;
    std::set<Mat> seen{top};
    std::deque<Mat> queue{top};
    while (!queue.empty()) {
        const Mat L = queue.front();
        queue.pop_front();
        const int len = index_valuation(L, p);
        for (const auto& W : subspaces) {
            if (W.size() == n) continue;
            Mat gens;
            for (const auto& r : L) {
                Vec pr = r;
                for (auto& x : pr) x = pmod(x * p, P);
                gens.push_back(std::move(pr));
            }
            for (const auto& w : W) {
                Vec v(n, 0);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) v[j] = pmod(v[j] + w[i] * L[i][j], P);
                gens.push_back(std::move(v));
            }
            Mat M = hnf_mod(std::move(gens), P);
            if (index_valuation(M, p) != len + static_cast<int>(n - W.size())) continue;  // would pass below P Z^n
            if (seen.count(M) || !stable(M)) continue;
            seen.insert(M);
            queue.push_back(std::move(M));
        }
    }

    // Normalized: the image in O_K/p generates the unit ideal.
    auto normalized = [&](const Mat& h) {
        IntMatrix span;
        for (const auto& r : h)
            for (std::size_t a = 0; a < n; ++a) {
                Vec ea(n, 0);
                ea[a] = 1;
                const Vec prod = vec_times(r, mult_matrix(ea, p), p);
                span.emplace_back(prod.begin(), prod.end());
            }
        return rank_mod_p(span, p_big) == n;
    };
    std::vector<Mat> normal;
    for (const auto& L : seen)
        if (normalized(L)) normal.push_back(L);

    auto is_unit_mod_p = [&](const Vec& u) {
        const Mat m = mult_matrix(u, p);
        IntMatrix mm;
        for (const auto& r : m) mm.emplace_back(r.begin(), r.end());
        return rank_mod_p(mm, p_big) == n;
    };
    std::vector<Vec> residues;
    {
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(p);
        for (std::size_t code = 0; code < total; ++code) {
            Vec v(n, 0);
            std::size_t rest = code;
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(p));
                rest /= static_cast<std::size_t>(p);
            }
            residues.push_back(std::move(v));
        }
    }

    // Generators of (O_K / P)^x: residue units and 1 + p^k w_j.
    std::int64_t residue_units = 0;
    std::vector<Mat> unit_gens;
    for (const auto& v : residues)
        if (is_unit_mod_p(v)) {
            ++residue_units;
            unit_gens.push_back(mult_matrix(v, P));
        }
    for (std::int64_t k = 1, pk = p; k < depth; ++k, pk *= p)
        for (std::size_t j = 0; j < n; ++j) {
            Vec u = one;
            u[j] = pmod(u[j] + pk, P);
            unit_gens.push_back(mult_matrix(u, P));
        }

    auto act = [&](const Mat& h, const Mat& u) {
        Mat rows;
        for (const auto& r : h) rows.push_back(vec_times(r, u, P));
        return hnf_mod(std::move(rows), P);
    };

    // O_L = {x : x L ⊆ L} = {x : x Y_r adj(L) ≡ 0 mod P for every basis row r}, adj(L) = P L^{-1}.
    auto multiplier = [&](const Mat& h) {
        RatMatrix hr(n, std::vector<ExactRational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) hr[i][j] = ExactRational(h[i][j]);
        const RatMatrix hinv = rational_inverse(hr);
        Mat adj(n, Vec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const ExactRational x = hinv[i][j] * P;
                ensure(boost::multiprecision::denominator(x) == 1, "lattice does not contain P Z^n");
                adj[i][j] = pmod(to_i64(boost::multiprecision::numerator(x)), P);
            }
        const std::size_t m = n * n;
        IntMatrix big;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<BigInt> row(m + n, BigInt(0));
            Vec ei(n, 0);
            ei[i] = 1;
            for (std::size_t r = 0; r < n; ++r) {
                const Vec prod = vec_times(vec_times(h[r], mult_matrix(ei, P), P), adj, P);
                for (std::size_t j = 0; j < n; ++j) row[r * n + j] = prod[j];
            }
            row[m + i] = 1;
            big.push_back(std::move(row));
        }
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<BigInt> row(m + n, BigInt(0));
            row[k] = P;
            big.push_back(std::move(row));
        }
        const IntMatrix hb = hermite_normal_form(std::move(big), m + n);
        Mat ol;
        for (std::size_t r = m; r < m + n; ++r) {
            Vec v(n);
            for (std::size_t j = 0; j < n; ++j) v[j] = to_i64(hb[r][m + j]);
            ol.push_back(std::move(v));
        }
        return hnf_mod(std::move(ol), P);
    };

    // [O_K^x : O_L^x] from unit counts modulo P.
    auto unit_index = [&](const Mat& ol) {
        IntMatrix vbasis;
        for (const auto& r : ol) {
            Vec rp = r;
            for (auto& x : rp) x = pmod(x, p);
            vbasis.emplace_back(rp.begin(), rp.end());
        }
        const std::size_t dim_v = rank_mod_p(vbasis, p_big);
        std::int64_t v_units = 0;
        for (const auto& v : residues) {
            if (!is_unit_mod_p(v)) continue;
            IntMatrix ext = vbasis;
            ext.emplace_back(v.begin(), v.end());
            if (rank_mod_p(ext, p_big) == dim_v) ++v_units;
        }
        const int len = index_valuation(ol, p);
        BigInt num = BigInt(residue_units) * ipow(p_big, static_cast<unsigned>(len + static_cast<int>(dim_v)));
        BigInt den = BigInt(v_units) * ipow(p_big, static_cast<unsigned>(n));
        ensure(num % den == 0, "unit index is not an integer");
        return std::make_pair(len, to_i64(num / den));
    };

    CensusResult res;
    res.depth = depth;
    res.min_depth = c0;
    std::set<Mat> assigned;
    for (const auto& L : normal) {
        if (assigned.count(L)) continue;
        std::set<Mat> orbit{L};
        std::deque<Mat> q{L};
        while (!q.empty()) {
            const Mat cur = q.front();
            q.pop_front();
            for (const auto& u : unit_gens) {
                Mat nxt = act(cur, u);
                if (orbit.insert(nxt).second) q.push_back(std::move(nxt));
            }
        }
        assigned.insert(orbit.begin(), orbit.end());
        LatticeClass cls;
        cls.hnf_basis = *orbit.begin();
        const auto [len, weight] = unit_index(multiplier(cls.hnf_basis));
        ensure(weight == static_cast<std::int64_t>(orbit.size()), "orbit size differs from the unit index");
        cls.multiplier_length = len;
        cls.weight = weight;
        res.classes.push_back(std::move(cls));
    }
    res.census = static_cast<long long>(normal.size());
    return res;
}

}  // namespace orbcount
