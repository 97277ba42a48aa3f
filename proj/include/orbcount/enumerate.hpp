#pragma once

// Exact N(X, T): integer matrices with characteristic polynomial chi and
// sum of squared entries <= floor(T^2).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

#include "orbcount/bigint.hpp"
#include "orbcount/errors.hpp"
#include "orbcount/invariants.hpp"
#include "orbcount/polynomial.hpp"

namespace orbcount {

inline constexpr double default_budget = 1e10;

struct CountOptions {
    double budget = default_budget;  // inner-loop steps
    unsigned threads = 0;            // 0: hardware concurrency
};

struct CountResult {
    std::vector<double> thresholds;
    std::vector<std::uint64_t> counts;
    std::vector<double> elapsed;
};

struct ConvergenceRow {
    double T = 0;
    std::uint64_t N = 0;
    double predicted = 0;
    double ratio = 0;
};

namespace detail {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 square_bound(double T) {
    if (!(T >= 0) || !std::isfinite(T)) throw ArgumentError("threshold must be a finite nonnegative number");
    const long double t = T;
    return static_cast<i64>(std::floor(t * t + 1e-12L));
}

inline i64 isqrt64(i64 n) {
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool isqrt128_exact(i128 n, i128& root) {
    if (n < 0) return false;
    i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    root = r;
    return r * r == n;
}

/// Sum of body(v) over [lo, hi], the range dealt out round-robin to the workers.
template <class F>
std::uint64_t parallel_sum(i64 lo, i64 hi, unsigned threads, F&& body) {
    if (hi < lo) return 0;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const i64 span = hi - lo + 1;
    threads = static_cast<unsigned>(std::min<i64>(threads, span));
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::exception_ptr> errors(threads);
    auto run = [&](unsigned k) {
        try {
            for (i64 v = lo + k; v <= hi; v += threads) partial[k] += body(v);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    if (threads == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(run, k);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::uint64_t total = 0;
    for (auto x : partial) total += x;
    return total;
}

class Budget {
public:
    explicit Budget(double limit) : limit_(limit) {}
    void spend(std::uint64_t steps) {
        if (static_cast<double>(used_.fetch_add(steps, std::memory_order_relaxed) + steps) > limit_)
            throw BudgetExceeded("operation budget of " + std::to_string(static_cast<std::uint64_t>(limit_)) + " steps exceeded");
    }

private:
    double limit_;
    std::atomic<std::uint64_t> used_{0};
};

inline i64 coeff64(const IntPolynomial& chi, int i) {
    const BigInt c = chi[i];
    if (abs(c) > BigInt(1) << 40) throw ArgumentError("coefficients too large for enumeration");
    return c.convert_to<i64>();
}

/// Number of (x13, x31) with x13 x31 = P, u x31 + w x13 = D and x13^2 + x31^2 <= rr.
inline std::uint64_t solve_pair(i64 u, i64 w, i64 P, i64 D, i64 rr) {
    auto fits = [rr](i128 a, i128 b) { return a * a + b * b <= rr; };
    std::uint64_t n = 0;
    if (P == 0) {
        // x13 = 0 (x31 free when the linear condition vanishes)
        if (u != 0) {
            if (D % u == 0 && fits(0, D / u)) ++n;
        } else if (D == 0) {
            n += static_cast<std::uint64_t>(2 * isqrt64(rr) + 1);
        }
        // x31 = 0, x13 != 0
        if (w != 0) {
            if (D % w == 0 && D != 0 && fits(D / w, 0)) ++n;
        } else if (D == 0) {
            n += static_cast<std::uint64_t>(2 * isqrt64(rr));
        }
        return n;
    }
    if (u != 0) {
        // u x31^2 - D x31 + w P = 0
        const i128 disc = static_cast<i128>(D) * D - 4 * static_cast<i128>(u) * w * P;
        i128 s;
        if (!isqrt128_exact(disc, s)) return 0;
        const i128 den = 2 * static_cast<i128>(u);
        for (int sign = 1; sign >= -1; sign -= 2) {
            if (sign == -1 && s == 0) break;
            const i128 num = D + sign * s;
            if (num % den != 0) continue;
            const i128 x31 = num / den;
            if (x31 == 0 || P % x31 != 0) continue;
            if (fits(P / x31, x31)) ++n;
        }
        return n;
    }
    if (D != 0) {
        const i128 num = static_cast<i128>(w) * P;
        if (num % D != 0) return 0;
        const i128 x31 = num / D;
        if (x31 == 0 || P % x31 != 0) return 0;
        return fits(P / x31, x31) ? 1 : 0;
    }
    if (w != 0) return 0;
    // every factorization of P
    const i64 aP = P < 0 ? -P : P;
    for (i64 d = 1; d * d <= aP; ++d) {
        if (aP % d) continue;
        const i64 q = aP / d;
        if (d * d + q * q > rr) continue;
        n += d == q ? 2 : 4;
    }
    return n;
}

inline std::uint64_t count2(const IntPolynomial& chi, i64 R, Budget& budget, unsigned threads) {
    // chi = x^2 - t x + d0; [[a, b], [c, e]] with a + e = t, ae - bc = d0.
    const i64 t = -coeff64(chi, 1), d0 = coeff64(chi, 0);
    const i64 amax = isqrt64(R);
    return parallel_sum(-amax, amax, threads, [&](i64 a) -> std::uint64_t {
        const i64 e = t - a;
        const i64 rest = R - a * a - e * e;
        if (rest < 0) return 0;
        const i64 m = a * e - d0;  // = bc
        if (m == 0) throw HypothesisViolation("chi has an integer root");
        const i64 am = m < 0 ? -m : m;
        if (2 * am > rest) return 0;
        const i64 dmax = isqrt64(am);
        budget.spend(static_cast<std::uint64_t>(dmax) + 1);
        std::uint64_t n = 0;
        for (i64 d = 1; d <= dmax; ++d) {
            if (am % d) continue;
            const i64 q = am / d;
            if (d * d + q * q > rest) continue;
            n += d == q ? 2 : 4;
        }
        return n;
    });
}

inline std::uint64_t count3(const IntPolynomial& chi, i64 R, Budget& budget, unsigned threads) {
    const i64 trace = -coeff64(chi, 2), e2 = coeff64(chi, 1), det = -coeff64(chi, 0);
    const i64 rmax = isqrt64(R);
    return parallel_sum(-rmax, rmax, threads, [&](i64 x11) -> std::uint64_t {
        std::uint64_t n = 0;
        std::uint64_t steps = 0;
        const i64 r1 = R - x11 * x11;
        const i64 b22 = isqrt64(r1);
        for (i64 x22 = -b22; x22 <= b22; ++x22) {
            const i64 x33 = trace - x11 - x22;
            const i64 r2 = r1 - x22 * x22 - x33 * x33;
            if (r2 < 0) continue;
            const i64 diag2 = x11 * x22 + x11 * x33 + x22 * x33;
            const i64 diag3 = x11 * x22 * x33;
            const i64 b12 = isqrt64(r2);
            for (i64 x12 = -b12; x12 <= b12; ++x12) {
                const i64 r3 = r2 - x12 * x12;
                const i64 b21 = isqrt64(r3);
                for (i64 x21 = -b21; x21 <= b21; ++x21) {
                    const i64 r4 = r3 - x21 * x21;
                    const i64 b23 = isqrt64(r4);
                    for (i64 x23 = -b23; x23 <= b23; ++x23) {
                        const i64 r5 = r4 - x23 * x23;
                        const i64 b32 = isqrt64(r5);
                        steps += static_cast<std::uint64_t>(2 * b32 + 1);
                        const i64 u = x12 * x23;
                        for (i64 x32 = -b32; x32 <= b32; ++x32) {
                            const i64 rr = r5 - x32 * x32;  // budget for x13^2 + x31^2
                            const i64 w = x21 * x32;
                            const i64 P = diag2 - x12 * x21 - x23 * x32 - e2;  // = x13 x31
                            const i64 aP = P < 0 ? -P : P;
                            if (2 * aP > rr) continue;
                            // u x31 + w x13 = D'
                            const i64 Dp = det - (diag3 - x11 * x23 * x32 - x12 * x21 * x33) + x22 * P;
                            n += solve_pair(u, w, P, Dp, rr);
                        }
                    }
                }
            }
            if (steps > (1u << 22)) {
                budget.spend(steps);
                steps = 0;
            }
        }
        budget.spend(steps);
        return n;
    });
}

/// Brute force over every matrix inside the norm ball, checking the characteristic polynomial directly.
inline std::uint64_t naive_count(const IntPolynomial& chi, i64 R, Budget& budget) {
    const int n = chi.degree();
    std::vector<i64> x(static_cast<std::size_t>(n * n), 0);
    const i64 trace = -coeff64(chi, n - 1);
    const i64 e2 = coeff64(chi, n - 2);
    const i64 c0 = coeff64(chi, 0);
    std::uint64_t count = 0, steps = 0;
    auto leaf = [&]() {
        if (n == 2) return x[0] + x[3] == trace && x[0] * x[3] - x[1] * x[2] == c0;
        auto at = [&](int i, int j) { return x[static_cast<std::size_t>(3 * i + j)]; };
        if (at(0, 0) + at(1, 1) + at(2, 2) != trace) return false;
        const i64 m2 = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0) + at(0, 0) * at(2, 2) - at(0, 2) * at(2, 0) +
                       at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1);
        if (m2 != e2) return false;
        const i64 d = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                      at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                      at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
        return d == -c0;
    };
    auto rec = [&](auto&& self, std::size_t k, i64 rest) -> void {
        if (k == x.size()) {
            if (++steps % (1u << 20) == 0) budget.spend(1u << 20);
            if (leaf()) ++count;
            return;
        }
        const i64 b = isqrt64(rest);
        for (i64 v = -b; v <= b; ++v) {
            x[k] = v;
            self(self, k + 1, rest - v * v);
        }
    };
    rec(rec, 0, R);
    return count;
}

inline double estimated_steps(int n, i64 R) {
    const double r = std::sqrt(static_cast<double>(R));
    if (n == 2) return (2 * r + 1) * (std::sqrt(r) + 1);
    return std::pow(std::numbers::pi, 3) / 6 * std::pow(r + 1, 6);
}

inline void check_input(const IntPolynomial& chi) {
    const int n = chi.degree();
    if (n != 2 && n != 3) throw UnsupportedDegree("enumeration supports degrees 2 and 3; got " + std::to_string(n));
    if (!is_irreducible_low_degree(chi)) throw HypothesisViolation("chi is reducible over Q");
}

}  // namespace detail

/// N(X, T) for a single threshold.
inline std::uint64_t count_matrices(const IntPolynomial& chi, double T, const CountOptions& opt = {}) {
    detail::check_input(chi);
    const detail::i64 R = detail::square_bound(T);
    if (detail::estimated_steps(chi.degree(), R) > opt.budget) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "T = %.10g needs about %.3g steps, above the budget %.3g", T,
                      detail::estimated_steps(chi.degree(), R), opt.budget);
        throw BudgetExceeded(msg);
    }
    detail::Budget budget(opt.budget);
    return chi.degree() == 2 ? detail::count2(chi, R, budget, opt.threads) : detail::count3(chi, R, budget, opt.threads);
}

inline CountResult count_thresholds(const IntPolynomial& chi, const std::vector<double>& Ts, const CountOptions& opt = {}) {
    if (!std::is_sorted(Ts.begin(), Ts.end())) throw ArgumentError("thresholds must be ascending");
    CountResult r;
    for (double T : Ts) {
        const auto start = std::chrono::steady_clock::now();
        r.counts.push_back(count_matrices(chi, T, opt));
        r.thresholds.push_back(T);
        r.elapsed.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return r;
}

/// Independent brute-force count for small T.
inline std::uint64_t naive_count_oracle(const IntPolynomial& chi, double T, double budget = 1e9) {
    detail::check_input(chi);
    if (T > 6) throw ArgumentError("naive oracle is limited to T <= 6");
    detail::Budget b(budget);
    return detail::naive_count(chi, detail::square_bound(T), b);
}

inline std::vector<ConvergenceRow> convergence_table(const CountResult& counts, const AsymptoticPrediction& pred) {
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < counts.thresholds.size(); ++i) {
        ConvergenceRow row;
        row.T = counts.thresholds[i];
        row.N = counts.counts[i];
        row.predicted = pred.coefficient * std::pow(row.T, pred.m);
        row.ratio = static_cast<double>(row.N) / row.predicted;
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<ConvergenceRow> convergence_table(const IntPolynomial& chi, const std::vector<double>& Ts,
                                                     const AsymptoticPrediction& pred, const CountOptions& opt = {}) {
    return convergence_table(count_thresholds(chi, Ts, opt), pred);
}

}  // namespace orbcount
