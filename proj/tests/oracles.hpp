// Test-only oracles, kept independent of the library code paths they check:
// straight-line recursions for the example sequences, brute-force tuple
// enumeration for the Diophantine counters and the MGF expansion, long-series
// Bessel summation, and exact interval arithmetic for the short-block rule.
#ifndef LACMGF_TEST_ORACLES_HPP
#define LACMGF_TEST_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <unordered_map>
#include <vector>

#include "lacmgf/bigint.hpp"

namespace oracles {

using lacmgf::BigInt;
using lacmgf::Rational;

// ---- Bessel ---------------------------------------------------------------

// Fixed 40-term summation of I_m(x) = sum_j (x/2)^(2j+m) / (j! (j+m)!).
inline double bessel_series_40(int m, double x) {
    long double sum = 0.0L;
    const long double h = static_cast<long double>(x) / 2.0L;
    for (int j = 0; j < 40; ++j) {
        long double term = 1.0L;
        for (int i = 1; i <= j; ++i) term *= h / i;          // h^j / j!
        for (int i = 1; i <= j + m; ++i) term *= h / i;      // h^(j+m) / (j+m)!
        sum += term;
    }
    return static_cast<double>(sum);
}

// ---- example sequence recursions -------------------------------------------

inline std::vector<BigInt> pairblock_terms(long long count) {
    std::vector<BigInt> t{1};
    for (long long k = 1; k < count; ++k) {
        if (k % 2 == 1) {
            t.push_back(2 * t.back());
        } else {
            BigInt f = 1;
            for (long long i = 2; i <= k; ++i) f *= i;
            t.push_back(f * t.back());
        }
    }
    return t;
}

inline std::vector<BigInt> tripleblock_terms(long long count) {
    // n_1 = 1; k = 1 mod 3: n_{k+1} = 2 n_k and n_{k+2} = 3 n_k;
    // k = 0 mod 3: n_{k+1} = k! n_k.  Written index-first, no shared state.
    std::vector<BigInt> t{1};
    while (static_cast<long long>(t.size()) < count) {
        const long long k = static_cast<long long>(t.size());  // index of t.back()
        if (k % 3 == 1) {
            t.push_back(2 * t[static_cast<std::size_t>(k - 1)]);
        } else if (k % 3 == 2) {
            t.push_back(3 * t[static_cast<std::size_t>(k - 2)]);
        } else {
            BigInt f = 1;
            for (long long i = 2; i <= k; ++i) f *= i;
            t.push_back(f * t[static_cast<std::size_t>(k - 1)]);
        }
    }
    return t;
}

// ---- brute-force near-solution counters ------------------------------------

inline unsigned long long brute_two(const std::vector<BigInt>& v, const BigInt& thr,
                                    bool exclude_diagonal) {
    unsigned long long c = 0;
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (exclude_diagonal && a == b) continue;
            if (lacmgf::abs_big(v[a] - v[b]) < thr) ++c;
        }
    return c;
}

inline unsigned long long brute_three(const std::vector<BigInt>& v, const BigInt& thr) {
    unsigned long long c = 0;
    for (const auto& a : v)
        for (const auto& b : v)
            for (const auto& d : v)
                if (lacmgf::abs_big(a - b - d) < thr) ++c;
    return c;
}

inline unsigned long long brute_four(const std::vector<BigInt>& v, const BigInt& thr, bool pppm) {
    unsigned long long c = 0;
    for (const auto& a : v)
        for (const auto& b : v)
            for (const auto& d : v)
                for (const auto& e : v) {
                    const BigInt combo = pppm ? BigInt(a + b + d - e) : BigInt(a + b - d - e);
                    if (lacmgf::abs_big(combo) < thr) ++c;
                }
    return c;
}

// ---- exact square-root interval for the short-block rule -------------------

// Rational bracket lo^2 <= q <= hi^2, refined by bisection.
struct SqrtBracket {
    Rational lo, hi;

    explicit SqrtBracket(const Rational& q) : lo(1), hi(q < 4 ? Rational(2) : q) {
        if (lo * lo > q) lo = 0;
    }
    void refine(const Rational& q) {
        const Rational mid = (lo + hi) / 2;
        (mid * mid <= q ? lo : hi) = mid;
    }
};

// Decides "q^s > (1 - q^{-1/2})^{-1}" and "1 + 4 q^{-s} < sqrt(q)" exactly,
// narrowing the sqrt bracket until both comparisons are unambiguous.
inline Rational pow_rational(const Rational& q, int e) {
    Rational out = 1, acc = q;
    for (int bits = e; bits > 0; bits >>= 1) {
        if (bits & 1) out *= acc;
        if (bits > 1) acc *= acc;
    }
    return out;
}

inline std::pair<bool, bool> s_conditions(const Rational& q, int s) {
    const Rational qs = pow_rational(q, s);
    // exact boundary hits (sqrt(q) rational) cannot be separated by bisection;
    // strict inequalities make them false
    const bool c1_boundary = q * (qs - 1) * (qs - 1) == qs * qs;
    const Rational lhs2 = 1 + Rational(4) / qs;
    const bool c2_boundary = lhs2 * lhs2 == q;
    SqrtBracket r(q);
    for (int iter = 0; iter < 4096; ++iter) {
        // cond1: q^s (sqrt(q) - 1) > sqrt(q), monotone in the sqrt value
        const bool c1_lo = c1_boundary ? false : qs * (r.lo - 1) > r.lo;
        const bool c1_hi = c1_boundary ? false : qs * (r.hi - 1) > r.hi;
        const bool c2_lo = c2_boundary ? false : lhs2 < r.lo;
        const bool c2_hi = c2_boundary ? false : lhs2 < r.hi;
        if (c1_lo == c1_hi && c2_lo == c2_hi) return {c1_lo, c2_lo};
        r.refine(q);
    }
    throw std::runtime_error("s_conditions: bracket failed to separate");
}

// ---- brute-force MGF expansion ---------------------------------------------

// Full enumeration of tuples (m_1..m_N) in [-cap, cap]^N; exponential, keep
// N small.  weights[m] = I_m(sqrt(2) lambda) supplied by the caller so this
// stays independent of the library's Bessel series too, if desired.
inline double mgf_null_tuples_brute(const std::vector<BigInt>& terms,
                                    const std::vector<double>& weights, int cap) {
    const std::size_t n = terms.size();
    std::vector<int> m(n, -cap);
    double total = 0.0;
    while (true) {
        BigInt combo = 0;
        for (std::size_t i = 0; i < n; ++i) combo += m[i] * terms[i];
        if (combo == 0) {
            double w = 1.0;
            for (std::size_t i = 0; i < n; ++i)
                w *= weights[static_cast<std::size_t>(std::abs(m[i]))];
            total += w;
        }
        std::size_t pos = 0;
        while (pos < n && m[pos] == cap) m[pos++] = -cap;
        if (pos == n) break;
        ++m[pos];
    }
    return total;
}

// Same sum with int64 partial sums (valid whenever cap * sum(terms) fits);
// much faster, used by the screening helpers that need deep order caps.
inline double mgf_null_tuples_dp_i64(const std::vector<long long>& terms,
                                     const std::vector<double>& weights, int cap) {
    std::vector<long long> freq(terms.rbegin(), terms.rend());
    std::vector<long long> rem(freq.size() + 1, 0);
    for (std::size_t i = freq.size(); i-- > 0;) rem[i] = rem[i + 1] + cap * freq[i];
    std::unordered_map<long long, double> states{{0, 1.0}};
    for (std::size_t i = 0; i < freq.size(); ++i) {
        std::unordered_map<long long, double> next;
        next.reserve(states.size() * 4);
        for (const auto& [p, w] : states)
            for (int m = -cap; m <= cap; ++m) {
                const long long p2 = p + m * freq[i];
                if (std::llabs(p2) > rem[i + 1]) continue;
                next[p2] += w * weights[static_cast<std::size_t>(std::abs(m))];
            }
        states.swap(next);
    }
    return states.at(0);
}

// Level-by-level weighted null-tuple sum with arbitrary order cap; used to
// measure how much mass the library's capped expansion leaves out.
inline double mgf_null_tuples_dp(const std::vector<BigInt>& terms,
                                 const std::vector<double>& weights, int cap) {
    std::vector<BigInt> freq(terms.rbegin(), terms.rend());
    std::vector<BigInt> rem(freq.size() + 1, BigInt(0));
    for (std::size_t i = freq.size(); i-- > 0;) rem[i] = rem[i + 1] + cap * freq[i];
    std::map<BigInt, double> states{{BigInt(0), 1.0}};
    for (std::size_t i = 0; i < freq.size(); ++i) {
        std::map<BigInt, double> next;
        for (const auto& [p, w] : states)
            for (int m = -cap; m <= cap; ++m) {
                BigInt p2 = p + m * freq[i];
                if (lacmgf::abs_big(p2) > rem[i + 1]) continue;
                next[std::move(p2)] += w * weights[static_cast<std::size_t>(std::abs(m))];
            }
        states.swap(next);
    }
    return states.at(BigInt(0));
}

// ---- deterministic randomness ----------------------------------------------

// splitmix64: identical stream on every platform
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform integer in [lo, hi]
    long long uniform(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
};

// Random lacunary sequence with n_N <= max_freq.  The frequency budget is
// spent so the first term is as large as the requested length allows; large
// offset-laden leading terms avoid the accidental small-coefficient integer
// relations that tiny leading frequencies always carry.  Steps keep strict
// doubling: n_{k+1} >= 2 n_k + 1.
inline std::vector<BigInt> random_lacunary(Rng& rng, long long count, long long max_freq) {
    double budget = static_cast<double>(max_freq);
    for (long long i = 1; i < count; ++i) budget /= 2.55;
    const long long hi = std::max(1ll, static_cast<long long>(budget));
    std::vector<BigInt> t;
    t.push_back(rng.uniform(std::max(1ll, (2 * hi) / 3), hi));
    while (static_cast<long long>(t.size()) < count) {
        const double r = rng.uniform_real(2.02, 3.1);
        const long long prev = static_cast<long long>(t.back());
        const long long nxt =
            std::max(2 * prev + 1,
                     static_cast<long long>(std::floor(r * static_cast<double>(prev))) +
                         rng.uniform(0, 2));
        if (nxt > max_freq) break;
        t.push_back(nxt);
    }
    return t;
}

} // namespace oracles

#endif
