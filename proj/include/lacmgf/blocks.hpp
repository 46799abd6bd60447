#ifndef LACMGF_BLOCKS_HPP
#define LACMGF_BLOCKS_HPP

#include <span>
#include <vector>

#include "lacmgf/bigint.hpp"
#include "lacmgf/errors.hpp"
#include "lacmgf/sequence.hpp"

namespace lacmgf {

// Closed range of 1-based sequence indices.
struct IndexRange {
    long long first = 1;
    long long last = 0;  // inclusive; last < first means empty

    long long size() const { return last < first ? 0 : last - first + 1; }
    bool contains(long long k) const { return k >= first && k <= last; }
};

// Partition of {1..n} into alternating long blocks D_1, D_2, ... (length L)
// and short blocks D_1', D_2', ... (length s), element-wise increasing.
// Only trailing blocks may be shortened, and the final short block may be
// absent.
struct BlockDecomposition {
    long long n = 0;
    long long long_len = 0;   // L
    long long short_len = 0;  // s
    long long pairs = 0;      // M = number of long blocks
    std::vector<IndexRange> long_blocks;
    std::vector<IndexRange> short_blocks;  // short_blocks.size() <= pairs
};

// Smallest positive integer s with
//
//   q^s > (1 - q^{-1/2})^{-1}   and   1 + 4 q^{-s} < sqrt(q),
//
// decided in exact rational arithmetic on the square-cleared forms
//   q (q^s - 1)^2 > q^{2s}     and   (q^s + 4)^2 < q^{2s+1}.
// Requires q > 1.  (s exists for every q > 1 and depends on q only.)
int choose_s(const Rational& q);

// L = ceil(1/(2|lambda|)), computed exactly from the binary value of
// lambda so that rounding cannot flip the ceiling.  Requires lambda != 0.
// Callers are responsible for checking the working assumptions s < L and
// L <= 1/(sqrt(2)|lambda|) where they matter.
long long choose_l(double lambda);

// Greedy alternating layout: repeatedly take min(L, remaining) indices as a
// long block, then min(s, remaining) as a short block.  Requires
// n >= L + 1 and L > s >= 1.
BlockDecomposition decompose(long long n, long long long_len, long long short_len);

enum class EquationKind { two_term, three_term, four_term_ppmm, four_term_pppm };

const char* equation_kind_name(EquationKind kind);

// One near-solution count: the number of ordered index tuples from a block
// whose signed frequency combination is smaller than the threshold in
// absolute value (strict inequality, exact integer arithmetic).
struct SolutionCount {
    EquationKind kind;
    long long block_index = 0;       // 1-based position of the block
    BigInt threshold;                // canonically n_{i^-}
    unsigned long long count = 0;
    long long block_len = 0;         // L at the time of the count
};

// |n_{k1} - n_{k2}| < threshold over ordered pairs; the diagonal k1 == k2
// (always a solution) is dropped when exclude_diagonal is set, matching the
// k1 != k2 restriction of the quadratic term.
SolutionCount count_two_term(const LacunarySequence& seq, IndexRange block,
                             const BigInt& threshold, bool exclude_diagonal);

// |n_{k1} - n_{k2} - n_{k3}| < threshold over ordered triples.
SolutionCount count_three_term(const LacunarySequence& seq, IndexRange block,
                               const BigInt& threshold);

// |n_{k1} + n_{k2} - n_{k3} - n_{k4}| < threshold (four_term_ppmm) or
// |n_{k1} + n_{k2} + n_{k3} - n_{k4}| < threshold (four_term_pppm) over
// ordered 4-tuples.  Sorted pair sums plus a sliding window keep this at
// O(L^2 log L) instead of the O(L^4) brute force.
SolutionCount count_four_term(const LacunarySequence& seq, IndexRange block,
                              const BigInt& threshold, EquationKind signature);

// Dispatch on kind (two_term takes exclude_diagonal = true).
SolutionCount count_solutions(const LacunarySequence& seq, IndexRange block,
                              const BigInt& threshold, EquationKind kind);

struct ScalingRow {
    long long block_len = 0;          // L
    unsigned long long max_count = 0; // max over long blocks of the count
};

// For each L: decompose {1..N} with s = choose_s(q_certified), count
// near-solutions on every long block with threshold n_{i^-}, report the max.
// Errors if the sequence cannot host a decomposition for some L, naming the
// required length.
std::vector<ScalingRow> scaling_probe(const LacunarySequence& seq, EquationKind kind,
                                      std::span<const long long> l_values);

} // namespace lacmgf

#endif
