#include "lacmgf/mgf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "lacmgf/bessel.hpp"

namespace lacmgf {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr unsigned long long kBuiltinMaxGrid = 1ull << 26;
constexpr unsigned long long kHardMaxGrid = 1ull << 31;  // exact 64-bit phase products

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace

const char* method_name(Method m) {
    return m == Method::quadrature ? "quadrature" : "diophantine";
}

unsigned long long resolve_max_grid(unsigned long long requested) {
    if (requested != 0) return std::min(requested, kHardMaxGrid);
    if (const char* env = std::getenv("LACMGF_MAX_GRID")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return std::min(v, kHardMaxGrid);
        throw DomainError("LACMGF_MAX_GRID must be a positive integer");
    }
    return kBuiltinMaxGrid;
}

int default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

namespace {

struct GridPlan {
    unsigned long long points = 0;
    unsigned long long bandwidth = 0;
};

GridPlan plan_grid(const LacunarySequence& seq, double lambda, const QuadratureOptions& opts,
                   bool throwing) {
    const BigInt& top = seq.max_frequency();
    if (top > BigInt(1) << 32) {
        if (throwing)
            throw Infeasible("mgf_quadrature: max frequency " + top.str() +
                             " exceeds the grid feasibility bound 2^32");
        return {};
    }
    const auto n_top = static_cast<unsigned long long>(top);
    const auto q_lam = static_cast<unsigned long long>(
        std::ceil(kSqrt2 * std::abs(lambda) * std::numbers::e));
    const unsigned long long bandwidth = n_top * (1 + 2 * q_lam);
    const unsigned long long points = bandwidth * static_cast<unsigned long long>(opts.oversample);
    const unsigned long long cap = resolve_max_grid(opts.max_grid);
    if (points > cap) {
        if (throwing)
            throw Infeasible("mgf_quadrature: requires " + std::to_string(points) +
                             " grid points, exceeding the cap " + std::to_string(cap) +
                             " (LACMGF_MAX_GRID)");
        return {};
    }
    return {points, bandwidth};
}

// Rigorous majorant of the aliased Fourier mass of the integrand
//   g(x) = prod_k exp(z cos(2 pi n_k x)),  z = sqrt(2) |lambda|.
//
// Every mode of g at frequency f carries weight at most the corresponding
// product of Bessel factors, and |f| >= M forces sum_k |m_k| n_k >= M.  A
// Chernoff-style bound in theta >= 1 with the frequency weights nu_k =
// n_k / n_N then gives, for every theta,
//
//   aliased mass <= theta^(-M/n_N) prod_k f_k(theta),
//   f_k(theta)   <= I_0(z) + 2 e^{z^2/4} (exp((z/2) theta^{nu_k}) - 1),
//
// using I_m(z) <= (z/2)^m / m! * e^{z^2/4}.  The reported bound minimizes
// over a fixed theta grid.
double aliasing_majorant(const LacunarySequence& seq, double z, unsigned long long grid_points) {
    const double n_top = static_cast<double>(seq.max_frequency());
    const double w_min = static_cast<double>(grid_points) / n_top;
    std::vector<double> nu;
    nu.reserve(seq.terms.size());
    for (const BigInt& t : seq.terms) nu.push_back(static_cast<double>(t) / n_top);

    const double i0 = bessel_i(0, z);
    const double bump = std::exp(z * z / 4.0);
    double best_log = std::numeric_limits<double>::infinity();
    const int steps = 120;
    const double lo = std::log(1.02), hi = std::log(1e9);
    for (int i = 0; i <= steps; ++i) {
        const double log_theta = lo + (hi - lo) * i / steps;
        double total = -w_min * log_theta;
        for (double v : nu) {
            const double a = (z / 2.0) * std::exp(v * log_theta);
            double log_f;
            if (a > 700.0)
                log_f = a + z * z / 4.0 + std::numbers::ln2;  // factor ~ 2 e^{z^2/4} e^a
            else
                log_f = std::log(i0 + 2.0 * bump * std::expm1(a));
            total += log_f;
            if (total > best_log) break;
        }
        best_log = std::min(best_log, total);
    }
    return best_log > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(best_log);
}

} // namespace

bool quadrature_feasible(const LacunarySequence& seq, double lambda,
                         const QuadratureOptions& opts) {
    if (std::abs(lambda) > 1.0) return false;
    if (lambda == 0.0) return true;
    return plan_grid(seq, lambda, opts, /*throwing=*/false).points != 0;
}

MgfEstimate mgf_quadrature(const LacunarySequence& seq, double lambda,
                           const QuadratureOptions& opts) {
    if (!(std::abs(lambda) <= 1.0))
        throw DomainError("mgf_quadrature: lambda must lie in [-1, 1]");
    if (opts.oversample < 4)
        throw DomainError("mgf_quadrature: oversample must be >= 4");

    MgfEstimate est;
    est.method = Method::quadrature;
    est.lambda = lambda;
    est.n = seq.size();
    if (lambda == 0.0) {
        // empty exponent: the integrand is identically 1
        est.value = 1.0;
        est.log_value = 0.0;
        est.error_bound = 0.0;
        return est;
    }

    const GridPlan plan = plan_grid(seq, lambda, opts, /*throwing=*/true);
    const unsigned long long m_grid = plan.points;
    est.grid_points = m_grid;

    // phases reduced exactly: (n_k mod M) * j mod M stays below 2^62
    std::vector<std::uint64_t> residues;
    residues.reserve(seq.terms.size());
    for (const BigInt& t : seq.terms)
        residues.push_back(static_cast<std::uint64_t>(t % m_grid));

    const double scale = 2.0 * std::numbers::pi / static_cast<double>(m_grid);
    const double coeff = lambda * kSqrt2;

    const int workers = std::clamp(opts.threads > 0 ? opts.threads : default_threads(), 1,
                                   static_cast<int>(std::min<unsigned long long>(m_grid, 64)));
    std::vector<KahanSum> partial(static_cast<std::size_t>(workers));
    auto run_chunk = [&](int w) {
        const unsigned long long begin = m_grid * w / workers;
        const unsigned long long end = m_grid * (w + 1) / workers;
        KahanSum acc;
        for (unsigned long long j = begin; j < end; ++j) {
            double expo = 0.0;
            for (std::uint64_t r : residues)
                expo += std::cos(scale * static_cast<double>(r * j % m_grid));
            acc.add(std::exp(coeff * expo));
        }
        partial[static_cast<std::size_t>(w)] = acc;
    };
    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
        for (auto& t : pool) t.join();
    }
    // fixed-order merge: reproducible for a fixed worker count
    KahanSum total;
    for (const KahanSum& p : partial) {
        total.add(p.sum);
        total.add(-p.carry);  // Kahan carry holds bits still to subtract
    }

    est.value = total.sum / static_cast<double>(m_grid);
    est.log_value = std::log(est.value);

    const double alias = aliasing_majorant(seq, kSqrt2 * std::abs(lambda), m_grid);
    const double fp = 16.0 * std::numeric_limits<double>::epsilon() *
                      (1.0 + kSqrt2 * std::abs(lambda) * static_cast<double>(est.n));
    est.error_bound = (alias < 0.5 * est.value ? alias / (est.value - alias)
                                               : std::numeric_limits<double>::infinity()) +
                      fp;
    return est;
}

MgfEstimate mgf_diophantine(const LacunarySequence& seq, double lambda,
                            const DiophantineOptions& opts) {
    if (seq.size() > 16)
        throw Infeasible("mgf_diophantine: N <= 16 enumeration bound exceeded (N = " +
                         std::to_string(seq.size()) + ")");
    if (opts.order_cap < 1 || opts.order_cap > 8)
        throw Infeasible("mgf_diophantine: order cap must lie in [1, 8], got " +
                         std::to_string(opts.order_cap));
    const double z = kSqrt2 * lambda;
    if (!(std::abs(z) <= 4.0))
        throw DomainError("mgf_diophantine: |lambda| too large for the Bessel range");

    const int cap = opts.order_cap;
    const BesselSeriesConfig bessel_cfg{200, opts.tail_tolerance};
    std::vector<double> weight(static_cast<std::size_t>(cap) + 1);
    for (int m = 0; m <= cap; ++m) weight[static_cast<std::size_t>(m)] = bessel_i(m, z, bessel_cfg);

    // indices in decreasing frequency order; remaining_mass[i] bounds
    // |sum of unprocessed contributions| once the first i are done
    const auto n = static_cast<std::size_t>(seq.size());
    std::vector<BigInt> freq(seq.terms.rbegin(), seq.terms.rend());
    std::vector<BigInt> remaining_mass(n + 1, BigInt(0));
    for (std::size_t i = n; i-- > 0;)
        remaining_mass[i] = remaining_mass[i + 1] + cap * freq[i];

    // partial sum -> accumulated product weight; merging equal partial sums
    // is what keeps the largest-first sweep polynomial
    std::map<BigInt, double> states{{BigInt(0), 1.0}};
    for (std::size_t i = 0; i < n; ++i) {
        std::map<BigInt, double> next;
        const BigInt& nk = freq[i];
        const BigInt& mass = remaining_mass[i + 1];
        for (const auto& [psum, wt] : states) {
            for (int m = -cap; m <= cap; ++m) {
                BigInt p2 = psum + m * nk;
                if (abs_big(p2) > mass) continue;  // unreachable null sum: prune
                next[std::move(p2)] += wt * weight[static_cast<std::size_t>(std::abs(m))];
            }
        }
        states.swap(next);
    }

    MgfEstimate est;
    est.method = Method::diophantine;
    est.lambda = lambda;
    est.n = seq.size();
    est.order_cap = cap;
    est.value = states.at(BigInt(0));  // the zero tuple always survives
    est.log_value = std::log(est.value);

    const double tail = bessel_i_tail_bound(z, cap, bessel_cfg);
    const double truncation =
        static_cast<double>(est.n) * tail * std::exp(std::abs(z) * static_cast<double>(est.n - 1));
    const double fp = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(est.n);
    est.error_bound = truncation / est.value + fp;
    return est;
}

double lambda_n(const LacunarySequence& seq, double lambda, Method method) {
    const MgfEstimate est = method == Method::quadrature ? mgf_quadrature(seq, lambda)
                                                         : mgf_diophantine(seq, lambda);
    return est.log_value / static_cast<double>(est.n);
}

MgfEstimate mgf_auto(const LacunarySequence& seq, double lambda) {
    if (quadrature_feasible(seq, lambda)) return mgf_quadrature(seq, lambda);
    if (seq.size() <= 16) return mgf_diophantine(seq, lambda);
    throw Infeasible("mgf: no feasible method (grid above cap and N > 16)");
}

} // namespace lacmgf
