#ifndef LACMGF_BIGINT_HPP
#define LACMGF_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace lacmgf {

// Frequencies are exact integers: the factorial steps in the example
// sequences overflow 64 bits after a handful of terms, and the Diophantine
// counters need exact comparisons.
using BigInt = boost::multiprecision::cpp_int;

// Gap ratios and the short-block inequalities are exact rationals; the
// thresholds in the short-block length rule are sensitive near q -> 1.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// Smallest integer >= num/den for den > 0.
inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den;
    if (q * den < num) ++q;
    return q;
}

inline BigInt ceil_rational(const Rational& r) {
    return ceil_div(boost::multiprecision::numerator(r),
                    boost::multiprecision::denominator(r));
}

} // namespace lacmgf

#endif
