#ifndef LACMGF_BESSEL_HPP
#define LACMGF_BESSEL_HPP

#include <vector>

#include "lacmgf/bigint.hpp"

namespace lacmgf {

// Truncation control for the modified Bessel power series.
struct BesselSeriesConfig {
    int max_terms = 200;            // hard cap on series terms
    double tail_tolerance = 1e-18;  // absolute bound on the first dropped term
};

// Modified Bessel function of the first kind I_m(x) by power series,
//
//   I_m(x) = sum_{j>=0} (x/2)^(2j+m) / (j! (j+m)!),
//
// valid on the operating range |x| <= 4, 0 <= m <= 64.  The series is
// truncated once the next term falls below cfg.tail_tolerance and the term
// ratio has dropped under 1/2, so the absolute truncation error is at most
// 2 * cfg.tail_tolerance (geometric tail domination).
double bessel_i(int order, double x, const BesselSeriesConfig& cfg = {});

// Upper bound on the tail sum over orders m > beyond_order of I_m(|z|).
// Uses I_{m+1}(z) <= I_m(z) * (z/2)/(m+1), which makes the tail geometric.
double bessel_i_tail_bound(double z, int beyond_order,
                           const BesselSeriesConfig& cfg = {});

// Exact rational Taylor coefficients of lambda -> log I_0(sqrt(2) lambda)
// at 0, for the even powers lambda^2, lambda^4, ..., lambda^order.
// order must be one of {2, 4, 6, 8}.  (All odd coefficients vanish.)
//
// The I_0 series in this scaling is rational term by term,
//   I_0(sqrt(2) lambda) = sum_m lambda^(2m) / (2^m (m!)^2),
// and the log is composed formally over rationals.
std::vector<Rational> log_i0_coefficients(int order);

} // namespace lacmgf

#endif
