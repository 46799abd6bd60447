#ifndef LACMGF_MGF_HPP
#define LACMGF_MGF_HPP

#include <string>

#include "lacmgf/bigint.hpp"
#include "lacmgf/errors.hpp"
#include "lacmgf/sequence.hpp"

namespace lacmgf {

enum class Method { quadrature, diophantine };

const char* method_name(Method m);

// One evaluation of the moment generating function
//
//   M_N(lambda) = int_0^1 exp( lambda sum_{k<=N} sqrt(2) cos(2 pi n_k x) ) dx.
//
// error_bound is an absolute bound on log_value for the reporting method.
struct MgfEstimate {
    double value = 0.0;
    double log_value = 0.0;
    Method method = Method::quadrature;
    double error_bound = 0.0;
    double lambda = 0.0;
    long long n = 0;
    // method metadata
    unsigned long long grid_points = 0;  // quadrature only
    int order_cap = 0;                   // diophantine only
};

struct QuadratureOptions {
    long long oversample = 8;        // grid points per unit of bandwidth, >= 4
    unsigned long long max_grid = 0; // 0: use LACMGF_MAX_GRID or the built-in cap
    int threads = 0;                 // 0: library default worker count
};

struct DiophantineOptions {
    int order_cap = 8;              // per-index Bessel order cap (m_max), <= 8
    double tail_tolerance = 1e-18;  // Bessel series truncation
};

// Grid-size cap resolution: explicit option, else LACMGF_MAX_GRID, else 2^26.
unsigned long long resolve_max_grid(unsigned long long requested);

// Default worker count (clamped hardware concurrency); applies when a
// threads option is 0.
int default_threads();

// Equispaced (periodic trapezoidal) average of the integrand over
// oversample * B points, B = ceil(n_N (1 + 2 ceil(sqrt(2)|lambda| e))).
// For the 1-periodic entire integrand this rule is exact up to aliasing of
// Fourier modes >= the grid size; error_bound reports a computable
// Bessel-tail majorant of the aliased mass.  Phases are reduced in exact
// integer arithmetic, and the grid sum is compensated, partitioned into
// per-worker chunks merged in fixed order (bitwise reproducible for a fixed
// worker count).
//
// Requires |lambda| <= 1, n_N <= 2^32, and the grid to fit the cap
// (otherwise Infeasible names the violated bound).
MgfEstimate mgf_quadrature(const LacunarySequence& seq, double lambda,
                           const QuadratureOptions& opts = {});

// Exact-expansion route: inserting exp(z cos t) = sum_m I_m(z) e^{imt} per
// factor and integrating leaves exactly the null tuples,
//
//   M_N(lambda) = sum_{ sum_k m_k n_k = 0, |m_k| <= order_cap }
//                 prod_k I_{m_k}(sqrt(2) lambda),
//
// evaluated by a largest-frequency-first sweep whose partial sums are
// pruned against the remaining order-weighted mass; partial tuples with
// equal partial sums are merged, which keeps the state space polynomial.
// error_bound covers the order cap truncation:
//   N * (Bessel tail beyond the cap) * exp(sqrt(2)|lambda| (N-1)).
//
// Requires seq.size() <= 16 and order_cap <= 8 (Infeasible otherwise).
MgfEstimate mgf_diophantine(const LacunarySequence& seq, double lambda,
                            const DiophantineOptions& opts = {});

// True when mgf_quadrature would accept this call without Infeasible.
bool quadrature_feasible(const LacunarySequence& seq, double lambda,
                         const QuadratureOptions& opts = {});

// (1/N) log M_N(lambda), error bound inherited from the method divided by N.
double lambda_n(const LacunarySequence& seq, double lambda, Method method);

// Method dispatch helper: quadrature when feasible, else the Diophantine
// expansion when seq.size() <= 16, else Infeasible.
MgfEstimate mgf_auto(const LacunarySequence& seq, double lambda);

} // namespace lacmgf

#endif
