#pragma once

#include <utility>
#include <vector>

#include "orbcount/bigint.hpp"

namespace orbcount {

using IntMatrix = std::vector<std::vector<BigInt>>;
using RatMatrix = std::vector<std::vector<ExactRational>>;

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
inline RatMatrix rational_inverse(RatMatrix a) {
    const std::size_t n = a.size();
    RatMatrix inv(n, std::vector<ExactRational>(n, ExactRational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw ArgumentError("singular matrix");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        const ExactRational s = 1 / a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= s;
            inv[c][j] *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const ExactRational f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

/// Row vector times matrix.
template <class T>
std::vector<T> row_times(const std::vector<T>& v, const std::vector<std::vector<T>>& m) {
    std::vector<T> r(m.empty() ? 0 : m[0].size(), T(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += v[i] * m[i][j];
    }
    return r;
}

/// Row-style Hermite normal form of the lattice spanned by the rows of gens (full rank n).
/// Upper triangular, positive diagonal, entries above the diagonal reduced into [0, pivot).
inline IntMatrix hermite_normal_form(IntMatrix rows, std::size_t n) {
    IntMatrix h;
    for (std::size_t c = 0; c < n; ++c) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) throw ArgumentError("lattice is not of full rank");
            bool done = true;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][c] == 0) continue;
                const BigInt q = rows[i][c] / rows[best][c];
                for (std::size_t j = c; j < n; ++j) rows[i][j] -= q * rows[best][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) {
                auto piv = rows[best];
                if (piv[c] < 0)
                    for (auto& x : piv) x = -x;
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
                h.push_back(std::move(piv));
                break;
            }
        }
        std::erase_if(rows, [](const std::vector<BigInt>& r) {
            for (const auto& x : r)
                if (x != 0) return false;
            return true;
        });
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const BigInt q = h[i][j] / h[j][j] - (mod(h[i][j], h[j][j]) != 0 && h[i][j] < 0 ? 1 : 0);
            if (q == 0) continue;
            for (std::size_t k = j; k < n; ++k) h[i][k] -= q * h[j][k];
        }
    return h;
}

/// Basis of the left kernel {x : x M = 0} over F_p; M has one row per unknown.
inline std::vector<std::vector<BigInt>> left_kernel_mod_p(const IntMatrix& m, const BigInt& p) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    // Row-reduce the transpose: solve M^T x = 0.
    IntMatrix a(cols, std::vector<BigInt>(rows, BigInt(0)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[j][i] = mod(m[i][j], p);
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < rows && r < cols; ++c) {
        std::size_t piv = r;
        while (piv < cols && a[piv][c] == 0) ++piv;
        if (piv == cols) continue;
        std::swap(a[piv], a[r]);
        const BigInt inv = modinv(a[r][c], p);
        for (auto& x : a[r]) x = x * inv % p;
        for (std::size_t i = 0; i < cols; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const BigInt f = a[i][c];
            for (std::size_t j = 0; j < rows; ++j) a[i][j] = mod(a[i][j] - f * a[r][j], p);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<BigInt>> basis;
    std::vector<bool> is_pivot(rows, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t fc = 0; fc < rows; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<BigInt> v(rows, BigInt(0));
        v[fc] = 1;
        for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = mod(-a[k][fc], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Rank over F_p.
inline std::size_t rank_mod_p(const IntMatrix& m, const BigInt& p) {
    if (m.empty()) return 0;
    return m.size() - left_kernel_mod_p(m, p).size();
}

}  // namespace orbcount
