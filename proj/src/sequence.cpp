#include "lacmgf/sequence.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

namespace lacmgf {

std::optional<Rational> hadamard_ratio(std::span<const BigInt> terms) {
    if (terms.empty())
        throw SequenceError(SequenceError::Kind::non_positive_term,
                            "sequence is empty");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] < 1)
            throw SequenceError(SequenceError::Kind::non_positive_term,
                                "term " + std::to_string(i + 1) + " is not a positive integer");
        if (i > 0 && terms[i] < terms[i - 1])
            throw SequenceError(SequenceError::Kind::not_increasing,
                                "terms decrease at position " + std::to_string(i + 1));
    }
    if (terms.size() == 1) return std::nullopt;

    // equal consecutive terms give ratio 1; verify_hadamard rejects that as
    // NotLacunary rather than NotIncreasing
    std::optional<Rational> min_ratio;
    for (std::size_t i = 1; i < terms.size(); ++i) {
        Rational r(terms[i], terms[i - 1]);
        if (!min_ratio || r < *min_ratio) min_ratio = std::move(r);
    }
    return min_ratio;
}

Rational verify_hadamard(std::span<const BigInt> terms) {
    auto ratio = hadamard_ratio(terms);
    if (!ratio) return Rational(2);  // vacuous witness for a single term
    if (*ratio <= 1)
        throw SequenceError(SequenceError::Kind::not_lacunary,
                            "minimal gap ratio does not exceed 1");
    return *ratio;
}

LacunarySequence sequence_from_terms(std::vector<BigInt> terms, std::string label) {
    Rational q = verify_hadamard(terms);
    return LacunarySequence{std::move(terms), std::move(q), std::move(label)};
}

LacunarySequence make_geometric(const BigInt& base, long long count) {
    if (base < 2) throw DomainError("make_geometric: base must be an integer >= 2");
    if (count < 1) throw DomainError("make_geometric: count must be >= 1");
    std::vector<BigInt> terms;
    terms.reserve(static_cast<std::size_t>(count));
    BigInt v = 1;
    for (long long k = 0; k < count; ++k) {
        v *= base;
        terms.push_back(v);
    }
    std::ostringstream label;
    label << "geometric:" << base << ":" << count;
    return LacunarySequence{std::move(terms), Rational(base), label.str()};
}

LacunarySequence make_pairblock(long long count) {
    if (count < 1) throw DomainError("make_pairblock: count must be >= 1");
    std::vector<BigInt> terms{1};
    BigInt factorial = 1;  // k! maintained incrementally
    for (long long k = 1; k < count; ++k) {
        factorial *= k;
        terms.push_back(k % 2 == 1 ? BigInt(2 * terms.back())
                                   : BigInt(factorial * terms.back()));
    }
    return LacunarySequence{std::move(terms), Rational(2),
                            "pairblock:" + std::to_string(count)};
}

LacunarySequence make_tripleblock(long long count) {
    if (count < 1) throw DomainError("make_tripleblock: count must be >= 1");
    std::vector<BigInt> terms{1};
    BigInt factorial = 1;
    for (long long k = 1; static_cast<long long>(terms.size()) < count; ++k) {
        factorial *= k;
        const BigInt n_k = terms.back();
        if (k % 3 == 1) {
            // n_{k+1} = 2 n_k, n_{k+2} = 3 n_k; the loop advances past k+1
            terms.push_back(2 * n_k);
            if (static_cast<long long>(terms.size()) < count) terms.push_back(3 * n_k);
            factorial *= (k + 1);
            ++k;
        } else {
            // k = 0 mod 3: factorial jump decouples the next triple
            terms.push_back(factorial * n_k);
        }
    }
    Rational q = count >= 3 ? Rational(3, 2) : Rational(2);
    return LacunarySequence{std::move(terms), std::move(q),
                            "tripleblock:" + std::to_string(count)};
}

namespace {

bool is_decimal_integer(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

LacunarySequence load_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open sequence file: " + path);

    std::vector<BigInt> terms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t");
        std::string tok = line.substr(begin, end - begin + 1);
        if (tok[0] == '#') continue;
        if (!is_decimal_integer(tok))
            throw ParseError(lineno, path + ":" + std::to_string(lineno) +
                                         ": expected a decimal integer, got '" + tok + "'");
        terms.emplace_back(tok);
    }
    if (terms.empty()) throw ParseError(lineno, path + ": no terms found");
    return sequence_from_terms(std::move(terms), path);
}

void save_sequence(const LacunarySequence& seq, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write sequence file: " + path);
    for (const BigInt& t : seq.terms) out << t << '\n';
    if (!out) throw DomainError("write failed: " + path);
}

} // namespace lacmgf
