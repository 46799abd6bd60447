#include "lacmgf/asymptotics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <thread>

namespace lacmgf {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void validate_fit_grid(std::span<const double> grid) {
    if (grid.size() < 8) throw GridError("fit grid needs at least 8 points");
    bool pos = false, neg = false;
    for (double l : grid) {
        if (l == 0.0 || !std::isfinite(l)) throw GridError("fit grid must exclude 0");
        if (std::abs(l) > 0.3) throw GridError("fit grid must satisfy |lambda| <= 0.3");
        (l > 0 ? pos : neg) = true;
    }
    if (!pos || !neg) throw GridError("fit grid has all points of one sign");
    for (double l : grid) {
        bool mirrored = false;
        for (double m : grid)
            if (m == -l) { mirrored = true; break; }
        if (!mirrored) throw GridError("fit grid must be symmetric about 0");
    }
}

SeriesFit fit_samples(std::vector<double> grid, std::vector<double> samples, long long n,
                      std::string label) {
    const auto rows = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd a(rows, 3);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double l = grid[static_cast<std::size_t>(i)];
        a(i, 0) = l * l;
        a(i, 1) = l * l * l;
        a(i, 2) = l * l * l * l;
        y(i) = samples[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector3d c = a.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd resid = y - a * c;

    SeriesFit fit;
    fit.c2 = c(0);
    fit.c3 = c(1);
    fit.c4 = c(2);
    fit.lambda_grid = std::move(grid);
    fit.samples = std::move(samples);
    fit.residual_max = resid.cwiseAbs().maxCoeff();
    fit.n = n;
    fit.seq_label = std::move(label);
    return fit;
}

double lambda_n_dispatch(const LacunarySequence& seq, double lambda,
                         std::optional<Method> method) {
    if (method) return lambda_n(seq, lambda, *method);
    const MgfEstimate est = mgf_auto(seq, lambda);
    return est.log_value / static_cast<double>(est.n);
}

} // namespace

std::vector<double> default_fit_grid() {
    std::vector<double> grid;
    for (int j = -7; j <= 7; ++j)
        if (j != 0) grid.push_back(j / 100.0);
    return grid;
}

std::vector<double> default_envelope_grid() {
    std::vector<double> grid;
    for (int j = 1; j <= 5; ++j) {
        grid.push_back(j * 0.05);
        grid.push_back(-j * 0.05);
    }
    return grid;
}

SeriesFit fit_series(const LacunarySequence& seq, std::span<const double> lambda_grid,
                     std::optional<Method> method) {
    validate_fit_grid(lambda_grid);
    std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
    std::vector<double> samples;
    samples.reserve(grid.size());
    for (double l : grid) samples.push_back(lambda_n_dispatch(seq, l, method));
    return fit_samples(std::move(grid), std::move(samples), seq.size(), seq.label);
}

SeriesFit fit_raw_samples(std::span<const double> lambda_grid, std::span<const double> values,
                          long long n, std::string label) {
    validate_fit_grid(lambda_grid);
    if (lambda_grid.size() != values.size())
        throw GridError("fit_raw_samples: grid and value lengths differ");
    return fit_samples(std::vector<double>(lambda_grid.begin(), lambda_grid.end()),
                       std::vector<double>(values.begin(), values.end()), n, std::move(label));
}

double block_limit_lambda(BlockGenerator gen, double lambda) {
    if (!(std::abs(lambda) <= 1.0))
        throw DomainError("block_limit_lambda: |lambda| <= 1 required");
    static const LacunarySequence pair = sequence_from_terms({1, 2}, "pair-limit");
    static const LacunarySequence triple = sequence_from_terms({1, 2, 3}, "triple-limit");
    const LacunarySequence& seq = gen == BlockGenerator::pair ? pair : triple;
    QuadratureOptions opts;
    opts.oversample = 64;  // cheap at bandwidth <= 27, buys extra aliasing margin
    const MgfEstimate est = mgf_quadrature(seq, lambda, opts);
    return est.log_value / static_cast<double>(seq.size());
}

SeriesFit fit_block_limit(BlockGenerator gen, std::span<const double> lambda_grid) {
    validate_fit_grid(lambda_grid);
    std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
    std::vector<double> samples;
    samples.reserve(grid.size());
    for (double l : grid) samples.push_back(block_limit_lambda(gen, l));
    return fit_samples(std::move(grid), std::move(samples),
                       gen == BlockGenerator::pair ? 2 : 3,
                       gen == BlockGenerator::pair ? "pair-limit" : "triple-limit");
}

EnvelopeResult envelope_check(const LacunarySequence& seq, std::span<const double> lambda_grid,
                              std::optional<Method> method) {
    if (lambda_grid.empty()) throw GridError("envelope grid is empty");
    EnvelopeResult out;
    out.n = seq.size();
    for (double l : lambda_grid) {
        if (l == 0.0 || std::abs(l) > 1.0)
            throw GridError("envelope grid must lie in [-1, 1] without 0");
        const double v = lambda_n_dispatch(seq, l, method);
        const double ratio = std::abs(v - l * l / 2.0) / std::pow(std::abs(l), 3);
        if (ratio > out.ratio) {
            out.ratio = ratio;
            out.argmax_lambda = l;
        }
    }
    return out;
}

RateResult legendre_rate(std::span<const double> lambdas, std::span<const double> values,
                         double t) {
    if (lambdas.empty() || lambdas.size() != values.size())
        throw DomainError("legendre_rate: need matching nonempty sample arrays");
    RateResult out;
    out.rate = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double v = t * lambdas[i] - values[i];
        if (v > out.rate) {
            out.rate = v;
            arg = i;
        }
    }
    out.argmax_lambda = lambdas[arg];
    out.boundary = (arg == 0 || arg + 1 == lambdas.size());
    return out;
}

std::vector<TailEstimate> empirical_tail_multi(const LacunarySequence& seq, double lambda_scale,
                                               std::span<const double> thresholds,
                                               unsigned long long grid_points, int threads) {
    if (!(lambda_scale > 0.0)) throw DomainError("empirical_tail: lambda_scale must be > 0");
    if (thresholds.empty()) throw DomainError("empirical_tail: no thresholds given");
    if (grid_points > (1ull << 31))
        throw Infeasible("empirical_tail: grid_points above the 2^31 phase bound");
    if (BigInt(grid_points) < 10 * seq.max_frequency())
        throw DomainError("empirical_tail: grid_points must be >= 10 * n_N = " +
                          BigInt(10 * seq.max_frequency()).str() +
                          " to resolve the fastest oscillation");

    const auto n = static_cast<std::size_t>(seq.size());
    std::vector<std::uint64_t> residues;
    residues.reserve(n);
    for (const BigInt& t : seq.terms)
        residues.push_back(static_cast<std::uint64_t>(t % grid_points));

    const double scale = 2.0 * std::numbers::pi / static_cast<double>(grid_points);
    const double amp = lambda_scale * kSqrt2 / std::sqrt(static_cast<double>(seq.size()));
    std::vector<double> sorted_ts(thresholds.begin(), thresholds.end());
    std::sort(sorted_ts.begin(), sorted_ts.end());

    const int workers = std::clamp(threads > 0 ? threads : default_threads(), 1,
                                   static_cast<int>(std::min<unsigned long long>(grid_points, 64)));
    std::vector<std::vector<std::uint64_t>> counts(
        static_cast<std::size_t>(workers), std::vector<std::uint64_t>(sorted_ts.size(), 0));
    auto run_chunk = [&](int w) {
        const unsigned long long begin = grid_points * w / workers;
        const unsigned long long end = grid_points * (w + 1) / workers;
        auto& local = counts[static_cast<std::size_t>(w)];
        for (unsigned long long j = begin; j < end; ++j) {
            double s = 0.0;
            for (std::uint64_t r : residues)
                s += std::cos(scale * static_cast<double>(r * j % grid_points));
            s *= amp;
            // thresholds sorted ascending: count every level that s reaches
            for (std::size_t i = sorted_ts.size(); i-- > 0;) {
                if (s >= sorted_ts[i])
                    ++local[i];
                else if (s < sorted_ts[0])
                    break;
            }
        }
    };
    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
        for (auto& t : pool) t.join();
    }

    std::vector<TailEstimate> out;
    out.reserve(thresholds.size());
    for (double t : thresholds) {
        const std::size_t slot = static_cast<std::size_t>(
            std::lower_bound(sorted_ts.begin(), sorted_ts.end(), t) - sorted_ts.begin());
        std::uint64_t hits = 0;
        for (const auto& local : counts) hits += local[slot];

        TailEstimate est;
        est.t = t;
        est.lambda = lambda_scale;
        est.n = seq.size();
        est.grid_points = grid_points;
        est.gaussian_target = -t * t / 2.0;
        est.resolution_bound = (2.0 * static_cast<double>(seq.max_frequency()) + 2.0) /
                               static_cast<double>(grid_points);
        if (hits == 0) {
            est.zero_flagged = true;
            est.measure = 1.0 / static_cast<double>(grid_points);  // certified resolution bound
        } else {
            est.measure = static_cast<double>(hits) / static_cast<double>(grid_points);
        }
        est.mdp_normalized = lambda_scale * lambda_scale * std::log(est.measure);
        out.push_back(est);
    }
    return out;
}

TailEstimate empirical_tail(const LacunarySequence& seq, double lambda_scale, double t,
                            unsigned long long grid_points, int threads) {
    return empirical_tail_multi(seq, lambda_scale, std::span<const double>(&t, 1), grid_points,
                                threads)
        .front();
}

} // namespace lacmgf
