#ifndef LACMGF_SEQUENCE_HPP
#define LACMGF_SEQUENCE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacmgf/bigint.hpp"
#include "lacmgf/errors.hpp"

namespace lacmgf {

// A validated lacunary frequency sequence: strictly increasing positive
// integers n_1 < n_2 < ... with a certified gap ratio q_certified > 1 such
// that n_{k+1} >= q_certified * n_k holds exactly for every k.
//
// Immutable after construction; safe for concurrent reads.
struct LacunarySequence {
    std::vector<BigInt> terms;
    Rational q_certified;
    std::string label;

    long long size() const { return static_cast<long long>(terms.size()); }
    const BigInt& max_frequency() const { return terms.back(); }
};

// Exact minimum of n_{k+1}/n_k over consecutive pairs; nullopt for a
// single-term sequence (every gap condition holds vacuously).
// Throws SequenceError on empty input, non-positive terms, or
// non-increasing terms.  Does not require the ratio to exceed 1.
std::optional<Rational> hadamard_ratio(std::span<const BigInt> terms);

// Validates terms and returns the exact minimal gap ratio.  Throws
// SequenceError (NonPositiveTerm / NotIncreasing / NotLacunary) if the terms
// are not a lacunary sequence.  A single-term sequence certifies any ratio
// vacuously; the conventional witness 2 is returned for it.
Rational verify_hadamard(std::span<const BigInt> terms);

// Wraps externally supplied terms, validating them and certifying the gap
// ratio via verify_hadamard.
LacunarySequence sequence_from_terms(std::vector<BigInt> terms, std::string label = {});

// n_k = a^k for k = 1..count, q_certified = a.  Requires a >= 2, count >= 1.
LacunarySequence make_geometric(const BigInt& base, long long count);

// n_1 = 1, n_{k+1} = 2 n_k for odd k, n_{k+1} = k! n_k for even k.
// The factorial steps split the dependence structure into pairs of
// consecutive indices.  q_certified = 2 (from the doubling steps).
LacunarySequence make_pairblock(long long count);

// n_1 = 1; for k = 1 mod 3: n_{k+1} = 2 n_k and n_{k+2} = 3 n_k; for
// k = 0 mod 3: n_{k+1} = k! n_k.  The structure decomposes into triples
// proportional to (1, 2, 3); within a triple the minimal ratio is 3/2.
LacunarySequence make_tripleblock(long long count);

// Text format: one decimal integer per line, lines starting with '#'
// ignored, trailing newline optional.  save/load round-trips exactly.
LacunarySequence load_sequence(const std::string& path);
void save_sequence(const LacunarySequence& seq, const std::string& path);

} // namespace lacmgf

#endif
