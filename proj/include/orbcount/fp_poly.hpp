#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "orbcount/bigint.hpp"
#include "orbcount/polynomial.hpp"

namespace orbcount {

/// Polynomial over F_p with p prime (coefficients in [0, p), lowest first, trimmed).
class FpPoly {
public:
    FpPoly(std::vector<BigInt> coeffs, BigInt p) : c_(std::move(coeffs)), p_(std::move(p)) { normalize(); }
    FpPoly(const ZPoly& z, BigInt p) : FpPoly(z.coeffs(), std::move(p)) {}
    static FpPoly zero(const BigInt& p) { return FpPoly(std::vector<BigInt>{}, p); }
    static FpPoly monomial(int deg, const BigInt& p) {
        std::vector<BigInt> c(static_cast<std::size_t>(deg) + 1, BigInt(0));
        c.back() = 1;
        return FpPoly(std::move(c), p);
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const BigInt& prime() const { return p_; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt operator[](int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : BigInt(0);
    }

    FpPoly monic() const {
        if (is_zero()) return *this;
        const BigInt inv = modinv(c_.back(), p_);
        std::vector<BigInt> r = c_;
        for (auto& a : r) a = a * inv % p_;
        return FpPoly(std::move(r), p_);
    }

    FpPoly derivative() const {
        std::vector<BigInt> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
        return FpPoly(std::move(d), p_);
    }

    BigInt eval(const BigInt& x) const {
        BigInt r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = (r * x + *it) % p_;
        return r;
    }

    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
        return FpPoly(std::move(r), a.p_);
    }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero(a.p_);
        std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return FpPoly(std::move(r), a.p_);
    }

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const {
        if (d.is_zero()) throw ArgumentError("division by zero polynomial");
        std::vector<BigInt> r = c_;
        const int dd = d.degree();
        if (degree() < dd) return {zero(p_), *this};
        std::vector<BigInt> q(static_cast<std::size_t>(degree() - dd) + 1, BigInt(0));
        const BigInt inv = modinv(d.c_.back(), p_);
        for (int i = degree(); i >= dd; --i) {
            const BigInt f = mod(r[static_cast<std::size_t>(i)] * inv, p_);
            q[static_cast<std::size_t>(i - dd)] = f;
            if (f == 0) continue;
            for (int j = 0; j <= dd; ++j)
                r[static_cast<std::size_t>(i - dd + j)] = mod(r[static_cast<std::size_t>(i - dd + j)] - f * d.c_[static_cast<std::size_t>(j)], p_);
        }
        r.resize(static_cast<std::size_t>(dd));
        return {FpPoly(std::move(q), p_), FpPoly(std::move(r), p_)};
    }

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.c_ == b.c_ && a.p_ == b.p_; }

private:
    void normalize() {
        for (auto& a : c_) a = mod(a, p_);
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<BigInt> c_;
    BigInt p_;
};

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// x^e mod f.
inline FpPoly fp_x_pow_mod(BigInt e, const FpPoly& f) {
    const BigInt& p = f.prime();
    FpPoly result = FpPoly(std::vector<BigInt>{1}, p).divmod(f).second;
    FpPoly base = FpPoly::monomial(1, p).divmod(f).second;
    while (e > 0) {
        if (e & 1) result = (result * base).divmod(f).second;
        base = (base * base).divmod(f).second;
        e >>= 1;
    }
    return result;
}

/// Number of distinct roots in F_p.
inline int fp_distinct_root_count(const FpPoly& f) {
    if (f.degree() <= 0) return 0;
    FpPoly xp = fp_x_pow_mod(f.prime(), f);
    FpPoly g = fp_gcd(f, xp - FpPoly::monomial(1, f.prime()));
    return g.degree();
}

/// Degrees of the irreducible factors of a squarefree polynomial of degree at most 3.
inline std::vector<int> fp_factor_degrees_squarefree(const FpPoly& f) {
    const int n = f.degree();
    if (n > 3) throw UnsupportedDegree("factor pattern implemented for degree <= 3");
    if (n <= 0) return {};
    const int r = fp_distinct_root_count(f);
    std::vector<int> out(static_cast<std::size_t>(r), 1);
    if (n - r > 0) out.push_back(n - r);
    return out;
}

/// A root of multiplicity >= 2, with its multiplicity, for polynomials of degree <= 3.
inline std::optional<std::pair<BigInt, int>> fp_repeated_root(const FpPoly& f_in) {
    if (f_in.degree() > 3) throw UnsupportedDegree("repeated-root search implemented for degree <= 3");
    if (f_in.degree() < 2) return std::nullopt;
    const FpPoly f = f_in.monic();
    const BigInt& p = f.prime();
    BigInt root;
    const FpPoly df = f.derivative();
    if (df.is_zero()) {
        // f = x^p + c, so f = (x + c)^p.
        root = mod(-f[0], p);
    } else {
        const FpPoly g = fp_gcd(f, df);
        if (g.degree() == 0) return std::nullopt;
        const int d = g.degree();
        if (d == 1 || p % d != 0) {
            root = mod(-g[d - 1] * modinv(BigInt(d), p), p);
        } else {
            // p = d = 2: g = x^2 + r^2 and r^2 = r in F_2.
            root = g[0];
        }
    }
    int mult = 0;
    FpPoly cur = f;
    const FpPoly lin(std::vector<BigInt>{mod(-root, p), 1}, p);
    for (;;) {
        auto [q, r] = cur.divmod(lin);
        if (!r.is_zero()) break;
        ++mult;
        cur = q;
    }
    ensure(mult >= 2, "fp_repeated_root: computed root is not repeated");
    return std::make_pair(root, mult);
}

}  // namespace orbcount
