#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "orbcount/bigint.hpp"

namespace orbcount {

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    return r;
}

// Deterministic for all 64-bit inputs with this base set.
inline bool is_prime64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        a %= n;
        if (a == 0) continue;
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline BigInt pollard_brent(const BigInt& n, std::mt19937_64& rng) {
    if (n % 2 == 0) return 2;
    std::uniform_int_distribution<std::uint64_t> dist(1, std::numeric_limits<std::uint64_t>::max());
    for (;;) {
        BigInt y = BigInt(dist(rng)) % n, c = BigInt(dist(rng)) % n, m = 128;
        BigInt g = 1, r = 1, q = 1, x, ys;
        do {
            x = y;
            for (BigInt i = 0; i < r; ++i) y = (y * y + c) % n;
            BigInt k = 0;
            do {
                ys = y;
                for (BigInt i = 0; i < std::min(m, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

}  // namespace detail

inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n <= std::numeric_limits<std::uint64_t>::max()) return detail::is_prime64(n.convert_to<std::uint64_t>());
    std::mt19937 rng(0x5eed);
    return boost::multiprecision::miller_rabin_test(n, 32, rng);
}

/// Prime factorization of |n| as prime -> exponent. n must be nonzero.
inline std::map<BigInt, int> factorize(const BigInt& n_in) {
    if (n_in == 0) throw ArgumentError("cannot factor zero");
    std::map<BigInt, int> out;
    BigInt n = abs(n_in);
    for (unsigned d = 2; d < 10000 && BigInt(d) * d <= n; ++d) {
        while (n % d == 0) {
            out[BigInt(d)]++;
            n /= d;
        }
    }
    std::vector<BigInt> stack;
    if (n > 1) stack.push_back(n);
    std::mt19937_64 rng(0xfac7);
    while (!stack.empty()) {
        BigInt m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            out[m]++;
            continue;
        }
        if (is_perfect_square(m)) {
            BigInt r = isqrt(m);
            stack.push_back(r);
            stack.push_back(r);
            continue;
        }
        BigInt f = detail::pollard_brent(m, rng);
        stack.push_back(f);
        stack.push_back(m / f);
    }
    return out;
}

/// All positive divisors of |n|, ascending.
inline std::vector<BigInt> divisors(const BigInt& n) {
    std::vector<BigInt> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = ds.size();
        BigInt pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// Primes up to and including limit.
inline std::vector<std::uint32_t> prime_sieve(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

}  // namespace orbcount
