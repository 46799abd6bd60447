#ifndef LACMGF_ASYMPTOTICS_HPP
#define LACMGF_ASYMPTOTICS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacmgf/mgf.hpp"
#include "lacmgf/sequence.hpp"

namespace lacmgf {

// Least-squares fit of Lambda_N(lambda) against {lambda^2, lambda^3,
// lambda^4}.  No constant or linear basis function: M_N(0) = 1 forces
// Lambda_N(0) = 0 and the zero-mean integrand kills the linear term.
struct SeriesFit {
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
    std::vector<double> lambda_grid;
    std::vector<double> samples;  // Lambda_N at the grid points
    double residual_max = 0.0;
    long long n = 0;
    std::string seq_label;
};

// Default fit grid {±0.01, ±0.02, ..., ±0.07}.  Small enough that the
// lambda^5 term of the target functions leaks under 1.1e-3 into the cubic
// coefficient, large enough to keep the normal equations well conditioned.
std::vector<double> default_fit_grid();

// Grid validation: >= 8 points, no zeros, |lambda| <= 0.3, both signs
// present and symmetric about 0 (GridError otherwise).
SeriesFit fit_series(const LacunarySequence& seq, std::span<const double> lambda_grid,
                     std::optional<Method> method = std::nullopt);

// Fit externally supplied samples (same grid validation); this is the whole
// fitter, so exact polynomial data must be recovered exactly.
SeriesFit fit_raw_samples(std::span<const double> lambda_grid, std::span<const double> values,
                          long long n = 0, std::string label = {});

enum class BlockGenerator { pair, triple };

// Limit functions of the pair/triple example constructions:
//   pair:   (1/2) log int_0^1 exp(lambda sqrt(2) (cos 2 pi x + cos 4 pi x)) dx
//   triple: (1/3) log over frequencies {1, 2, 3}
// evaluated by quadrature on the fixed sequences [1,2] / [1,2,3].
double block_limit_lambda(BlockGenerator gen, double lambda);

// Fit of the limit function itself on a lambda grid.
SeriesFit fit_block_limit(BlockGenerator gen, std::span<const double> lambda_grid);

struct EnvelopeResult {
    double ratio = 0.0;          // max over grid of |Lambda_N - lambda^2/2| / |lambda|^3
    double argmax_lambda = 0.0;
    long long n = 0;
};

// Default envelope grid {±0.05, ±0.10, ±0.15, ±0.20, ±0.25}.
std::vector<double> default_envelope_grid();

EnvelopeResult envelope_check(const LacunarySequence& seq, std::span<const double> lambda_grid,
                              std::optional<Method> method = std::nullopt);

struct RateResult {
    double rate = 0.0;           // max over the grid of t*lambda - Lambda(lambda)
    double argmax_lambda = 0.0;
    bool boundary = false;       // supremum attained at a grid endpoint
};

// Discrete Legendre transform of a sampled cumulant function.  lambdas must
// be sorted ascending and nonempty, values parallel to lambdas.
RateResult legendre_rate(std::span<const double> lambdas, std::span<const double> values,
                         double t);

// Level-set measurement of the MDP-scaled sum
//   X(x) = (lambda_scale / sqrt(N)) sum_k sqrt(2) cos(2 pi n_k x).
struct TailEstimate {
    double t = 0.0;
    double lambda = 0.0;              // the MDP scaling lambda_N
    long long n = 0;
    double measure = 0.0;             // Lebesgue measure of {X >= t} at grid resolution
    unsigned long long grid_points = 0;
    double mdp_normalized = 0.0;      // lambda^2 log measure
    double gaussian_target = 0.0;     // -t^2/2
    double resolution_bound = 0.0;    // certified |measure - truth| bound:
                                      // (2 n_N + 2) / grid_points, from the
                                      // crossing count of a degree-n_N
                                      // trigonometric polynomial
    bool zero_flagged = false;        // no sample reached t; measure holds the
                                      // certified upper bound 1/grid_points
};

// Deterministic equispaced sampling (the integrand is band-limited, so the
// bias is quantifiable); counting shards merge by exact integer addition, so
// the result is identical for every worker count.  Requires
// grid_points >= 10 * n_N to resolve the fastest oscillation.
TailEstimate empirical_tail(const LacunarySequence& seq, double lambda_scale, double t,
                            unsigned long long grid_points, int threads = 0);

// Single pass shared across several thresholds.
std::vector<TailEstimate> empirical_tail_multi(const LacunarySequence& seq,
                                               double lambda_scale,
                                               std::span<const double> thresholds,
                                               unsigned long long grid_points,
                                               int threads = 0);

} // namespace lacmgf

#endif
