#include "lacmgf/bessel.hpp"

#include <cmath>
#include <cstdlib>

#include "lacmgf/errors.hpp"

namespace lacmgf {

double bessel_i(int order, double x, const BesselSeriesConfig& cfg) {
    if (order < 0 || order > 64)
        throw DomainError("bessel_i: order must be in [0, 64], got " + std::to_string(order));
    if (!(std::abs(x) <= 4.0))
        throw DomainError("bessel_i: |x| <= 4 operating range exceeded");
    if (cfg.max_terms < 1 || !(cfg.tail_tolerance > 0.0))
        throw DomainError("bessel_i: invalid series configuration");

    const double ax = std::abs(x);
    const double sign = (x < 0.0 && order % 2 == 1) ? -1.0 : 1.0;
    const double h = ax / 2.0;
    const double h2 = h * h;

    // leading term (x/2)^m / m!
    double term = 1.0;
    for (int i = 1; i <= order; ++i) term *= h / i;

    double sum = term;
    for (int j = 0; j < cfg.max_terms; ++j) {
        const double ratio = h2 / ((j + 1.0) * (j + order + 1.0));
        term *= ratio;
        sum += term;
        // once the ratio is under 1/2 the tail is dominated by a geometric
        // series, so the dropped mass is below 2 * tail_tolerance
        if (term < cfg.tail_tolerance && ratio < 0.5) break;
    }
    return sign * sum;
}

double bessel_i_tail_bound(double z, int beyond_order, const BesselSeriesConfig& cfg) {
    const double az = std::abs(z);
    if (beyond_order < 0 || beyond_order > 63)
        throw DomainError("bessel_i_tail_bound: order out of range");
    const double first = bessel_i(beyond_order + 1, az, cfg);
    const double ratio = (az / 2.0) / (beyond_order + 2.0);
    if (ratio >= 1.0)
        throw DomainError("bessel_i_tail_bound: non-contracting tail");
    return first / (1.0 - ratio) + 2.0 * cfg.tail_tolerance;
}

namespace {

// Truncated polynomial arithmetic over rationals in the variable u = lambda^2.
using Poly = std::vector<Rational>;  // p[i] = coefficient of u^i

Poly mul_truncated(const Poly& a, const Poly& b, std::size_t max_deg) {
    Poly out(max_deg + 1, Rational(0));
    for (std::size_t i = 0; i < a.size() && i <= max_deg; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= max_deg; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

} // namespace

std::vector<Rational> log_i0_coefficients(int order) {
    if (order != 2 && order != 4 && order != 6 && order != 8)
        throw DomainError("log_i0_coefficients: order must be one of {2, 4, 6, 8}");
    const std::size_t k = static_cast<std::size_t>(order) / 2;

    // I_0(sqrt(2) lambda) - 1 = sum_{m>=1} u^m / (2^m (m!)^2), u = lambda^2
    Poly u(k + 1, Rational(0));
    BigInt pow2 = 1, fact = 1;
    for (std::size_t m = 1; m <= k; ++m) {
        pow2 *= 2;
        fact *= static_cast<long long>(m);
        u[m] = Rational(1, pow2 * fact * fact);
    }

    // log(1 + u) = sum_{i>=1} (-1)^{i+1} u^i / i, truncated at u^k
    Poly log_series(k + 1, Rational(0));
    Poly upow = u;
    for (std::size_t i = 1; i <= k; ++i) {
        const Rational c = Rational((i % 2 == 1) ? 1 : -1, static_cast<long long>(i));
        for (std::size_t d = 0; d <= k; ++d) log_series[d] += c * upow[d];
        if (i < k) upow = mul_truncated(upow, u, k);
    }

    return {log_series.begin() + 1, log_series.end()};
}

} // namespace lacmgf
