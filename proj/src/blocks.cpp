#include "lacmgf/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lacmgf {

namespace {

BigInt pow_big(const BigInt& base, long long e) {
    BigInt out = 1, acc = base;
    for (long long bits = e; bits > 0; bits >>= 1) {
        if (bits & 1) out *= acc;
        if (bits > 1) acc *= acc;
    }
    return out;
}

// Both defining inequalities, denominator-cleared to integers with
// q = a/b in lowest terms, A = a^s, B = b^s:
//   q^s > (1 - q^{-1/2})^{-1}  <=>  q (q^s - 1)^2 > q^{2s}  <=>  a (A - B)^2 > A^2 b
//   1 + 4 q^{-s} < sqrt(q)     <=>  (q^s + 4)^2 < q^{2s+1}  <=>  b (A + 4B)^2 < A^2 a
bool s_admissible(const BigInt& a, const BigInt& b, long long s) {
    const BigInt big_a = pow_big(a, s);
    const BigInt big_b = pow_big(b, s);
    const BigInt a2 = big_a * big_a;
    const BigInt d1 = big_a - big_b;
    if (!(a * d1 * d1 > a2 * b)) return false;
    const BigInt d2 = big_a + 4 * big_b;
    return b * d2 * d2 < a2 * a;
}

} // namespace

int choose_s(const Rational& q) {
    if (!(q > 1)) throw DomainError("choose_s: requires q > 1");
    const BigInt a = boost::multiprecision::numerator(q);
    const BigInt b = boost::multiprecision::denominator(q);
    // each inequality is a monotone threshold in s (q^s crosses a constant),
    // so double to bracket the answer and binary-search the minimum
    long long hi = 1;
    while (!s_admissible(a, b, hi)) {
        hi *= 2;
        if (hi > 1ll << 26) throw DomainError("choose_s: no admissible s found");
    }
    long long lo = hi / 2;  // lo = 0 or a failing s
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        (s_admissible(a, b, mid) ? hi : lo) = mid;
    }
    return static_cast<int>(hi);
}

long long choose_l(double lambda) {
    if (lambda == 0.0 || !std::isfinite(lambda))
        throw DomainError("choose_l: lambda must be nonzero and finite");
    // ceil(1/(2|lambda|)) on the exact binary value of lambda
    Rational lam(std::abs(lambda));
    BigInt l = ceil_rational(Rational(1) / (2 * lam));
    if (l > (BigInt(1) << 62))
        throw DomainError("choose_l: |lambda| too small, L exceeds 2^62");
    return static_cast<long long>(l);
}

BlockDecomposition decompose(long long n, long long long_len, long long short_len) {
    if (short_len < 1 || long_len <= short_len)
        throw InvalidBlockShape("decompose: requires L > s >= 1, got L=" +
                                std::to_string(long_len) + " s=" + std::to_string(short_len));
    if (n < long_len + 1)
        throw DomainError("decompose: requires N >= L+1 = " + std::to_string(long_len + 1) +
                          ", got N=" + std::to_string(n));

    BlockDecomposition d;
    d.n = n;
    d.long_len = long_len;
    d.short_len = short_len;
    long long next = 1;
    while (next <= n) {
        long long hi = std::min(n, next + long_len - 1);
        d.long_blocks.push_back({next, hi});
        next = hi + 1;
        if (next > n) break;
        hi = std::min(n, next + short_len - 1);
        d.short_blocks.push_back({next, hi});
        next = hi + 1;
    }
    d.pairs = static_cast<long long>(d.long_blocks.size());
    return d;
}

const char* equation_kind_name(EquationKind kind) {
    switch (kind) {
        case EquationKind::two_term: return "two_term";
        case EquationKind::three_term: return "three_term";
        case EquationKind::four_term_ppmm: return "four_term_ppmm";
        case EquationKind::four_term_pppm: return "four_term_pppm";
    }
    return "?";
}

namespace {

void check_block(const LacunarySequence& seq, IndexRange block) {
    if (block.size() == 0) return;
    if (block.first < 1 || block.last > seq.size())
        throw DomainError("count: block indices outside {1..N}");
}

std::vector<BigInt> block_terms(const LacunarySequence& seq, IndexRange block) {
    std::vector<BigInt> v;
    v.reserve(static_cast<std::size_t>(block.size()));
    for (long long k = block.first; k <= block.last; ++k)
        v.push_back(seq.terms[static_cast<std::size_t>(k - 1)]);
    return v;
}

// All sums a + b over ordered pairs from values, sorted ascending.
std::vector<BigInt> sorted_pair_sums(const std::vector<BigInt>& values) {
    std::vector<BigInt> sums;
    sums.reserve(values.size() * values.size());
    for (const BigInt& a : values)
        for (const BigInt& b : values) sums.push_back(a + b);
    std::sort(sums.begin(), sums.end());
    return sums;
}

std::vector<BigInt> sorted_pair_diffs(const std::vector<BigInt>& values) {
    std::vector<BigInt> diffs;
    diffs.reserve(values.size() * values.size());
    for (const BigInt& a : values)
        for (const BigInt& b : values) diffs.push_back(b - a);
    std::sort(diffs.begin(), diffs.end());
    return diffs;
}

// Number of pairs (a, b) with |a - b| < threshold, both ranges sorted.
// Sliding window: both boundary pointers only advance.
unsigned long long count_within(const std::vector<BigInt>& a_sorted,
                                const std::vector<BigInt>& b_sorted,
                                const BigInt& threshold) {
    unsigned long long total = 0;
    std::size_t lo = 0, hi = 0;
    for (const BigInt& a : a_sorted) {
        while (lo < b_sorted.size() && b_sorted[lo] <= a - threshold) ++lo;
        if (hi < lo) hi = lo;
        while (hi < b_sorted.size() && b_sorted[hi] < a + threshold) ++hi;
        total += hi - lo;
    }
    return total;
}

void check_threshold(const BigInt& threshold) {
    if (threshold < 1) throw DomainError("count: threshold must be >= 1");
}

} // namespace

SolutionCount count_two_term(const LacunarySequence& seq, IndexRange block,
                             const BigInt& threshold, bool exclude_diagonal) {
    check_block(seq, block);
    check_threshold(threshold);
    SolutionCount out{EquationKind::two_term, block.first, threshold, 0, block.size()};
    if (block.size() == 0) return out;
    auto vals = block_terms(seq, block);
    std::vector<BigInt> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    out.count = count_within(sorted, sorted, threshold);
    if (exclude_diagonal) out.count -= static_cast<unsigned long long>(vals.size());
    return out;
}

SolutionCount count_three_term(const LacunarySequence& seq, IndexRange block,
                               const BigInt& threshold) {
    check_block(seq, block);
    check_threshold(threshold);
    SolutionCount out{EquationKind::three_term, block.first, threshold, 0, block.size()};
    if (block.size() == 0) return out;
    auto vals = block_terms(seq, block);
    std::vector<BigInt> singles = vals;
    std::sort(singles.begin(), singles.end());
    out.count = count_within(singles, sorted_pair_sums(vals), threshold);
    return out;
}

SolutionCount count_four_term(const LacunarySequence& seq, IndexRange block,
                              const BigInt& threshold, EquationKind signature) {
    if (signature != EquationKind::four_term_ppmm && signature != EquationKind::four_term_pppm)
        throw DomainError("count_four_term: signature must be ppmm or pppm");
    check_block(seq, block);
    check_threshold(threshold);
    SolutionCount out{signature, block.first, threshold, 0, block.size()};
    if (block.size() == 0) return out;
    auto vals = block_terms(seq, block);
    auto sums = sorted_pair_sums(vals);
    if (signature == EquationKind::four_term_ppmm) {
        // |(n1 + n2) - (n3 + n4)| < T : window of the sum multiset against itself
        out.count = count_within(sums, sums, threshold);
    } else {
        // |(n1 + n2) - (n4 - n3)| < T over ordered pairs (k3, k4)
        out.count = count_within(sorted_pair_diffs(vals), sums, threshold);
    }
    return out;
}

SolutionCount count_solutions(const LacunarySequence& seq, IndexRange block,
                              const BigInt& threshold, EquationKind kind) {
    switch (kind) {
        case EquationKind::two_term: return count_two_term(seq, block, threshold, true);
        case EquationKind::three_term: return count_three_term(seq, block, threshold);
        default: return count_four_term(seq, block, threshold, kind);
    }
}

std::vector<ScalingRow> scaling_probe(const LacunarySequence& seq, EquationKind kind,
                                      std::span<const long long> l_values) {
    const int s = choose_s(seq.q_certified);
    std::vector<ScalingRow> rows;
    rows.reserve(l_values.size());
    for (long long l : l_values) {
        if (l <= s)
            throw DomainError("scaling_probe: L=" + std::to_string(l) +
                              " incompatible with s=" + std::to_string(s));
        if (seq.size() < l + 1)
            throw DomainError("scaling_probe: sequence too short for L=" + std::to_string(l) +
                              "; need at least " + std::to_string(l + 1) + " terms, have " +
                              std::to_string(seq.size()));
        const BlockDecomposition d = decompose(seq.size(), l, s);
        unsigned long long worst = 0;
        for (const IndexRange& block : d.long_blocks) {
            const BigInt& threshold = seq.terms[static_cast<std::size_t>(block.first - 1)];
            worst = std::max(worst, count_solutions(seq, block, threshold, kind).count);
        }
        rows.push_back({l, worst});
    }
    return rows;
}

} // namespace lacmgf
