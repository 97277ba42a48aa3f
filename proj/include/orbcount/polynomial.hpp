#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbcount/bigint.hpp"
#include "orbcount/primes.hpp"

namespace orbcount {

/// Dense integer polynomial, lowest degree first. The zero polynomial has no coefficients.
class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    ZPoly(std::initializer_list<long long> coeffs) {
        for (long long v : coeffs) c_.emplace_back(v);
        trim();
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigInt>& coeffs() const { return c_; }
    const BigInt& leading() const { return c_.back(); }

    BigInt operator[](int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : BigInt(0);
    }

    BigInt eval(const BigInt& x) const {
        BigInt r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    ZPoly derivative() const {
        std::vector<BigInt> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
        return ZPoly(std::move(d));
    }

    /// p(x + s).
    ZPoly shifted(const BigInt& s) const {
        std::vector<BigInt> a = c_;
        const int n = degree();
        for (int i = 0; i < n; ++i)
            for (int j = n - 1; j >= i; --j) a[static_cast<std::size_t>(j)] += s * a[static_cast<std::size_t>(j) + 1];
        return ZPoly(std::move(a));
    }

    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return ZPoly(std::move(r));
    }

    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& a = c_[static_cast<std::size_t>(i)];
            if (a == 0) continue;
            BigInt mag = orbcount::abs(a);
            if (!first) os << (a < 0 ? "-" : "+");
            else if (a < 0) os << "-";
            if (mag != 1 || i == 0) os << mag;
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<BigInt> c_;
};

/// Monic integer polynomial of positive degree; the characteristic polynomial chi.
class IntPolynomial {
public:
    explicit IntPolynomial(std::vector<BigInt> coeffs) : p_(std::move(coeffs)) {
        if (p_.degree() < 1) throw ArgumentError("polynomial must have positive degree");
        if (p_.leading() != 1) throw ArgumentError("polynomial must be monic: " + p_.to_string());
    }
    IntPolynomial(std::initializer_list<long long> coeffs) : IntPolynomial(ZPoly(coeffs).coeffs()) {}

    int degree() const { return p_.degree(); }
    const std::vector<BigInt>& coeffs() const { return p_.coeffs(); }
    BigInt operator[](int i) const { return p_[i]; }
    const ZPoly& poly() const { return p_; }
    std::string to_string() const { return p_.to_string(); }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.p_ == b.p_; }

private:
    ZPoly p_;
};

/// Determinant by fraction-free (Bareiss) elimination; exact over the integers.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Res(p, q) as the Sylvester-matrix determinant (rows of p first).
inline BigInt resultant(const ZPoly& p, const ZPoly& q) {
    if (p.is_zero() || q.is_zero()) throw ArgumentError("resultant of the zero polynomial");
    const int m = p.degree(), n = q.degree();
    const std::size_t size = static_cast<std::size_t>(m + n);
    if (size == 0) return 1;
    std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, BigInt(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = p[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = q[n - i];
    return bareiss_determinant(std::move(s));
}

/// Power sums s_0..s_count-1 of the roots, by Newton's identities.
inline std::vector<BigInt> power_sums(const IntPolynomial& p, int count) {
    const int n = p.degree();
    std::vector<BigInt> s(static_cast<std::size_t>(count), BigInt(0));
    if (count > 0) s[0] = n;
    for (int k = 1; k < count; ++k) {
        BigInt acc = 0;
        for (int i = 1; i <= std::min(k, n); ++i) {
            const BigInt a = p[n - i];
            acc += (i == k) ? a * k : a * s[static_cast<std::size_t>(k - i)];
        }
        s[static_cast<std::size_t>(k)] = -acc;
    }
    return s;
}

/// Discriminant of a monic polynomial, as the Hankel determinant of root power sums.
inline BigInt discriminant(const IntPolynomial& p) {
    const int n = p.degree();
    if (n < 2) throw ArgumentError("discriminant requires degree >= 2");
    auto s = power_sums(p, 2 * n - 1);
    std::vector<std::vector<BigInt>> h(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(i + j)];
    return bareiss_determinant(std::move(h));
}

/// Discriminant through (-1)^{n(n-1)/2} Res(p, p').
inline BigInt discriminant_via_resultant(const IntPolynomial& p) {
    const int n = p.degree();
    if (n < 2) throw ArgumentError("discriminant requires degree >= 2");
    BigInt r = resultant(p.poly(), p.poly().derivative());
    return ((n * (n - 1) / 2) % 2 == 0) ? r : BigInt(-r);
}

/// q(x) = p(x - c).
inline IntPolynomial translate(const IntPolynomial& p, const BigInt& c) {
    return IntPolynomial(p.poly().shifted(-c).coeffs());
}

/// Number of distinct real roots, from the Sturm sequence sign changes at -inf and +inf.
inline int sturm_real_root_count(const ZPoly& p) {
    using Q = ExactRational;
    auto to_q = [](const ZPoly& z) {
        std::vector<Q> v;
        for (const auto& c : z.coeffs()) v.emplace_back(c);
        return v;
    };
    auto trim = [](std::vector<Q>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto rem = [&](std::vector<Q> a, const std::vector<Q>& b) {
        while (a.size() >= b.size() && !a.empty()) {
            const Q f = a.back() / b.back();
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
            a.pop_back();
            trim(a);
        }
        return a;
    };
    std::vector<std::vector<Q>> seq{to_q(p), to_q(p.derivative())};
    while (!seq.back().empty()) {
        auto r = rem(seq[seq.size() - 2], seq.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        seq.push_back(std::move(r));
    }
    auto changes = [&](bool at_plus_inf) {
        int count = 0, last = 0;
        for (const auto& s : seq) {
            if (s.empty()) continue;
            int sign = s.back() > 0 ? 1 : -1;
            if (!at_plus_inf && (s.size() - 1) % 2 == 1) sign = -sign;
            if (last != 0 && sign != last) ++count;
            last = sign;
        }
        return count;
    };
    return changes(false) - changes(true);
}

inline bool is_irreducible_low_degree(const IntPolynomial& p) {
    const int n = p.degree();
    if (n == 2) return !is_perfect_square(discriminant(p));
    if (n == 3) {
        const BigInt a0 = p[0];
        if (a0 == 0) return false;
        for (const BigInt& d : divisors(a0))
            if (p.poly().eval(d) == 0 || p.poly().eval(-d) == 0) return false;
        return true;
    }
    throw UnsupportedDegree("irreducibility test implemented for degrees 2 and 3 only; got degree " +
                            std::to_string(n));
}

inline bool is_totally_real(const IntPolynomial& p) {
    const BigInt d = p.degree() >= 2 ? discriminant(p) : BigInt(1);
    if (d == 0) throw ArgumentError("polynomial is not squarefree: " + p.to_string());
    if (p.degree() == 2 || p.degree() == 3) return d > 0;
    return sturm_real_root_count(p.poly()) == p.degree();
}

/// Parses either a coefficient list ("-1,-1,1", constant first) or a human form ("x^2-x-1").
inline IntPolynomial parse_polynomial(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty polynomial");
    auto fail = [&](const std::string& why) { return ParseError("cannot parse polynomial '" + std::string(text) + "': " + why); };

    if (s.find('x') == std::string::npos && s.find('X') == std::string::npos) {
        std::vector<BigInt> coeffs;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) throw fail("empty coefficient");
            std::size_t start = (item[0] == '-' || item[0] == '+') ? 1 : 0;
            if (start == item.size()) throw fail("bad coefficient");
            for (std::size_t i = start; i < item.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(item[i]))) throw fail("bad coefficient '" + item + "'");
            coeffs.emplace_back(item[0] == '+' ? item.substr(1) : item);
        }
        try {
            return IntPolynomial(std::move(coeffs));
        } catch (const ArgumentError& e) {
            throw fail(e.what());
        }
    }

    std::vector<BigInt> coeffs;
    std::size_t i = 0;
    auto add = [&](int deg, const BigInt& c) {
        if (coeffs.size() <= static_cast<std::size_t>(deg)) coeffs.resize(static_cast<std::size_t>(deg) + 1, BigInt(0));
        coeffs[static_cast<std::size_t>(deg)] += c;
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw fail("expected '+' or '-' at position " + std::to_string(i));
        }
        std::size_t digits_start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        BigInt c = (i > digits_start) ? BigInt(s.substr(digits_start, i - digits_start)) : BigInt(1);
        const bool has_digits = i > digits_start;
        if (i < s.size() && s[i] == '*') {
            if (!has_digits) throw fail("dangling '*'");
            ++i;
        }
        int deg = 0;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t e0 = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i == e0) throw fail("missing exponent");
                deg = std::stoi(s.substr(e0, i - e0));
            }
        } else if (!has_digits) {
            throw fail("empty term");
        }
        add(deg, sign * c);
    }
    try {
        return IntPolynomial(std::move(coeffs));
    } catch (const ArgumentError& e) {
        throw fail(e.what());
    }
}

}  // namespace orbcount
