#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "orbcount/errors.hpp"

namespace orbcount {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using ExactRational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

/// Floor square root of a nonnegative integer.
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw ArgumentError("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

/// Exact test: integer square root squared back.
inline bool is_perfect_square(const BigInt& n) {
    if (n < 0) return false;
    BigInt r = isqrt(n);
    return r * r == n;
}

/// Exponent of p in n; n must be nonzero.
inline int valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw ArgumentError("valuation of zero");
    int v = 0;
    n = abs(n);
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline BigInt ipow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

/// Representative of a mod m in [0, m).
inline BigInt mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

/// Inverse of a modulo m; throws when not invertible.
inline BigInt modinv(const BigInt& a, const BigInt& m) {
    BigInt r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw ArgumentError("element not invertible modulo " + m.str());
    return mod(s0, m);
}

inline BigInt powmod(BigInt base, BigInt exp, const BigInt& m) {
    BigInt r = 1 % m;
    base = mod(base, m);
    while (exp > 0) {
        if (exp & 1) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return r;
}

inline bool fits_int64(const BigInt& a) {
    return a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const BigInt& a) {
    if (!fits_int64(a)) throw ArgumentError("integer does not fit in 64 bits: " + a.str());
    return a.convert_to<std::int64_t>();
}

/// Natural logarithm of a positive integer of any size.
inline double log_big(const BigInt& a) {
    if (a <= 0) throw ArgumentError("log of nonpositive integer");
    const unsigned bits = boost::multiprecision::msb(a);
    if (bits < 1000) return std::log(a.convert_to<double>());
    const unsigned shift = bits - 60;
    BigInt top = a >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

/// "29/8", or "5" when the denominator is one.
inline std::string to_string(const ExactRational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline double to_double(const ExactRational& r) { return r.convert_to<double>(); }

}  // namespace orbcount
