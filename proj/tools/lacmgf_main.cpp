// lacmgf: moment generating functions of lacunary cosine sums, block
// decompositions, Diophantine near-solution counts, series fits and
// moderate-deviation tail probes.  All numeric output is plain decimal
// (floats at 17 significant digits) so identical invocations diff cleanly.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lacmgf/asymptotics.hpp"
#include "lacmgf/bessel.hpp"
#include "lacmgf/blocks.hpp"
#include "lacmgf/mgf.hpp"
#include "lacmgf/sequence.hpp"

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string rational_str(const lacmgf::Rational& r) {
    const lacmgf::BigInt num = boost::multiprecision::numerator(r);
    const lacmgf::BigInt den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

lacmgf::Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return lacmgf::Rational(lacmgf::BigInt(text));
        return lacmgf::Rational(lacmgf::BigInt(text.substr(0, slash)),
                                lacmgf::BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw lacmgf::DomainError("cannot parse rational '" + text + "'");
    }
}

lacmgf::LacunarySequence parse_generator(const std::string& spec) {
    const auto c1 = spec.find(':');
    if (c1 == std::string::npos)
        throw lacmgf::DomainError("generator spec must look like kind:param:N or kind:N");
    const std::string kind = spec.substr(0, c1);
    try {
        if (kind == "geometric") {
            const auto c2 = spec.find(':', c1 + 1);
            if (c2 == std::string::npos)
                throw lacmgf::DomainError("geometric generator needs geometric:a:N");
            return lacmgf::make_geometric(lacmgf::BigInt(spec.substr(c1 + 1, c2 - c1 - 1)),
                                          std::stoll(spec.substr(c2 + 1)));
        }
        if (kind == "pairblock") return lacmgf::make_pairblock(std::stoll(spec.substr(c1 + 1)));
        if (kind == "tripleblock")
            return lacmgf::make_tripleblock(std::stoll(spec.substr(c1 + 1)));
    } catch (const lacmgf::Error&) {
        throw;
    } catch (const std::exception&) {
        throw lacmgf::DomainError("cannot parse generator spec '" + spec + "'");
    }
    throw lacmgf::DomainError("unknown generator kind '" + kind +
                              "' (expected geometric, pairblock, tripleblock)");
}

std::vector<double> parse_grid(const std::string& spec, bool drop_zero = true) {
    // a:b:step inclusive; exact zeros are dropped from lambda grids
    double a = 0, b = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || !(step > 0) || b < a)
        throw lacmgf::DomainError("grid spec must be a:b:step with step > 0, got '" + spec + "'");
    const auto count = static_cast<long long>(std::floor((b - a) / step + 0.5));
    if (count > 4'000'000) throw lacmgf::DomainError("grid spec describes too many points");
    std::vector<double> grid;
    for (long long i = 0; i <= count; ++i) {
        const double v = a + static_cast<double>(i) * step;
        if (!drop_zero || std::abs(v) > 1e-12) grid.push_back(v);
    }
    if (grid.empty()) throw lacmgf::DomainError("grid spec produced no points");
    return grid;
}

struct SeqOptions {
    std::string gen_spec;
    std::string seq_path;

    lacmgf::LacunarySequence resolve() const {
        if (gen_spec.empty() == seq_path.empty())
            throw lacmgf::DomainError("exactly one of --gen and --seq is required");
        return gen_spec.empty() ? lacmgf::load_sequence(seq_path) : parse_generator(gen_spec);
    }
};

void add_seq_options(CLI::App* cmd, SeqOptions& opts) {
    cmd->add_option("--gen", opts.gen_spec,
                    "generator spec: geometric:a:N | pairblock:N | tripleblock:N");
    cmd->add_option("--seq", opts.seq_path, "sequence file (one integer per line, # comments)");
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw lacmgf::DomainError("cannot open output file: " + out_path);
    out << payload;
}

json estimate_json(const lacmgf::MgfEstimate& est) {
    json j{{"lambda", est.lambda},
           {"n", est.n},
           {"method", lacmgf::method_name(est.method)},
           {"value", est.value},
           {"log_value", est.log_value},
           {"error_bound", est.error_bound}};
    if (est.method == lacmgf::Method::quadrature) j["grid_points"] = est.grid_points;
    if (est.method == lacmgf::Method::diophantine) j["order_cap"] = est.order_cap;
    return j;
}

int threads_flag = 0;

// ---- subcommand runners -------------------------------------------------

struct MgfArgs {
    SeqOptions seq;
    double lambda = std::numeric_limits<double>::quiet_NaN();
    std::string lambda_grid;
    std::string method = "both";
    long long oversample = 8;
    int order_cap = 8;
    std::string format = "json";
    std::string out;
};

int run_mgf(const MgfArgs& args) {
    const lacmgf::LacunarySequence seq = args.seq.resolve();
    lacmgf::QuadratureOptions qopts;
    qopts.oversample = args.oversample;
    qopts.threads = threads_flag;
    lacmgf::DiophantineOptions dopts;
    dopts.order_cap = args.order_cap;

    std::vector<double> lambdas;
    if (!args.lambda_grid.empty())
        lambdas = parse_grid(args.lambda_grid);
    else if (std::isnan(args.lambda))
        throw lacmgf::DomainError("mgf: need --lambda or --lambda-grid");
    else
        lambdas.push_back(args.lambda);

    std::vector<lacmgf::MgfEstimate> estimates;
    for (double l : lambdas) {
        if (args.method == "quad" || args.method == "both")
            estimates.push_back(lacmgf::mgf_quadrature(seq, l, qopts));
        if (args.method == "dio" || args.method == "both")
            estimates.push_back(lacmgf::mgf_diophantine(seq, l, dopts));
        if (args.method == "auto") estimates.push_back(lacmgf::mgf_auto(seq, l));
    }

    if (args.format == "csv") {
        std::string csv = "lambda,lambda_n\n";
        for (const auto& est : estimates)
            csv += fmt17(est.lambda) + "," +
                   fmt17(est.log_value / static_cast<double>(est.n)) + "\n";
        write_output(args.out, csv);
    } else {
        json arr = json::array();
        for (const auto& est : estimates) arr.push_back(estimate_json(est));
        write_output(args.out, arr.dump(2) + "\n");
    }
    return 0;
}

struct BlocksArgs {
    SeqOptions seq;
    long long n = 0;
    std::string q_text;
    double lambda = std::numeric_limits<double>::quiet_NaN();
    long long block_l = 0;
    long long block_s = 0;
    std::string out;
};

int run_blocks(const BlocksArgs& args) {
    if (args.n < 1) throw lacmgf::DomainError("blocks: --n is required and must be positive");
    lacmgf::Rational q;
    if (!args.q_text.empty())
        q = parse_rational(args.q_text);
    else if (!args.seq.gen_spec.empty() || !args.seq.seq_path.empty())
        q = args.seq.resolve().q_certified;
    else if (args.block_s < 1)
        throw lacmgf::DomainError("blocks: need --q (or --gen/--seq) unless --block-s is given");

    const long long s = args.block_s >= 1 ? args.block_s : lacmgf::choose_s(q);
    long long l = args.block_l;
    if (l < 1) {
        if (std::isnan(args.lambda))
            throw lacmgf::DomainError("blocks: need --block-l or --lambda");
        l = lacmgf::choose_l(args.lambda);
    }
    // the proof's decomposition needs at least one complete (long, short) pair
    if (args.n < l + s)
        throw lacmgf::Infeasible("blocks: N >= L+1 with a complete short block requires N >= L+s = " +
                                 std::to_string(l + s) + "; got N = " + std::to_string(args.n));
    const lacmgf::BlockDecomposition d = lacmgf::decompose(args.n, l, s);

    json j{{"N", d.n}, {"L", d.long_len}, {"s", d.short_len}, {"M", d.pairs}};
    auto ranges = [](const std::vector<lacmgf::IndexRange>& blocks) {
        json arr = json::array();
        for (const auto& b : blocks) arr.push_back(json::array({b.first, b.last}));
        return arr;
    };
    j["long_blocks"] = ranges(d.long_blocks);
    j["short_blocks"] = ranges(d.short_blocks);
    write_output(args.out, j.dump(2) + "\n");
    return 0;
}

lacmgf::EquationKind parse_kind(const std::string& kind) {
    if (kind == "two") return lacmgf::EquationKind::two_term;
    if (kind == "three") return lacmgf::EquationKind::three_term;
    if (kind == "ppmm") return lacmgf::EquationKind::four_term_ppmm;
    if (kind == "pppm") return lacmgf::EquationKind::four_term_pppm;
    throw lacmgf::DomainError("unknown --kind '" + kind + "' (two|three|ppmm|pppm)");
}

struct CountArgs {
    SeqOptions seq;
    std::string kind = "three";
    double lambda = std::numeric_limits<double>::quiet_NaN();
    long long block_l = 0;
    long long block_s = 0;
    bool include_diagonal = false;
    std::string out;
};

int run_count(const CountArgs& args) {
    const lacmgf::LacunarySequence seq = args.seq.resolve();
    const lacmgf::EquationKind kind = parse_kind(args.kind);
    const long long s = args.block_s >= 1 ? args.block_s : lacmgf::choose_s(seq.q_certified);
    long long l = args.block_l;
    if (l < 1) {
        if (std::isnan(args.lambda)) throw lacmgf::DomainError("count: need --block-l or --lambda");
        l = lacmgf::choose_l(args.lambda);
    }
    const lacmgf::BlockDecomposition d = lacmgf::decompose(seq.size(), l, s);

    std::string csv = "kind,block,threshold,count,L\n";
    for (const auto& block : d.long_blocks) {
        const lacmgf::BigInt& threshold = seq.terms[static_cast<std::size_t>(block.first - 1)];
        const lacmgf::SolutionCount c =
            kind == lacmgf::EquationKind::two_term
                ? lacmgf::count_two_term(seq, block, threshold, !args.include_diagonal)
                : lacmgf::count_solutions(seq, block, threshold, kind);
        csv += std::string(lacmgf::equation_kind_name(c.kind)) + "," +
               std::to_string(c.block_index) + "," + c.threshold.str() + "," +
               std::to_string(c.count) + "," + std::to_string(c.block_len) + "\n";
    }
    write_output(args.out, csv);
    return 0;
}

struct ProbeArgs {
    SeqOptions seq;
    std::string kind = "three";
    std::vector<long long> l_values;
    std::string out;
};

int run_probe(const ProbeArgs& args) {
    const lacmgf::LacunarySequence seq = args.seq.resolve();
    std::vector<long long> ls = args.l_values;
    if (ls.empty()) ls = {8, 16, 32, 64};
    const auto rows = lacmgf::scaling_probe(seq, parse_kind(args.kind), ls);
    std::string csv = "L,max_count,slope\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        csv += std::to_string(rows[i].block_len) + "," + std::to_string(rows[i].max_count) + ",";
        if (i > 0 && rows[i - 1].max_count > 0 && rows[i].max_count > 0)
            csv += fmt17(std::log(static_cast<double>(rows[i].max_count) /
                                  static_cast<double>(rows[i - 1].max_count)) /
                         std::log(static_cast<double>(rows[i].block_len) /
                                  static_cast<double>(rows[i - 1].block_len)));
        csv += "\n";
    }
    write_output(args.out, csv);
    return 0;
}

struct BesselArgs {
    int order = 6;
    std::string format = "csv";
    std::string out;
};

int run_bessel_coeffs(const BesselArgs& args) {
    const auto coeffs = lacmgf::log_i0_coefficients(args.order);
    if (args.format == "json") {
        json j{{"order", args.order}, {"coefficients", json::array()}};
        for (const auto& c : coeffs) j["coefficients"].push_back(rational_str(c));
        write_output(args.out, j.dump(2) + "\n");
    } else {
        std::string line;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            line += (i ? "," : "") + rational_str(coeffs[i]);
        write_output(args.out, line + "\n");
    }
    return 0;
}

std::optional<lacmgf::Method> parse_method(const std::string& method) {
    if (method == "auto") return std::nullopt;
    if (method == "quad") return lacmgf::Method::quadrature;
    if (method == "dio") return lacmgf::Method::diophantine;
    throw lacmgf::DomainError("unknown --method '" + method + "' (quad|dio|auto)");
}

struct FitArgs {
    SeqOptions seq;
    std::string limit;  // pair|triple fits the block limit function instead
    std::string method = "auto";
    std::string lambda_grid;
    std::string format = "json";
    std::string out;
};

int run_fit(const FitArgs& args) {
    const std::vector<double> grid =
        args.lambda_grid.empty() ? lacmgf::default_fit_grid() : parse_grid(args.lambda_grid);
    lacmgf::SeriesFit fit;
    if (!args.limit.empty()) {
        if (args.limit != "pair" && args.limit != "triple")
            throw lacmgf::DomainError("--limit must be pair or triple");
        fit = lacmgf::fit_block_limit(args.limit == "pair" ? lacmgf::BlockGenerator::pair
                                                           : lacmgf::BlockGenerator::triple,
                                      grid);
    } else {
        fit = lacmgf::fit_series(args.seq.resolve(), grid, parse_method(args.method));
    }

    if (args.format == "csv") {
        std::string csv = "lambda,lambda_n\n";
        for (std::size_t i = 0; i < fit.lambda_grid.size(); ++i)
            csv += fmt17(fit.lambda_grid[i]) + "," + fmt17(fit.samples[i]) + "\n";
        write_output(args.out, csv);
    } else {
        json samples = json::array();
        for (std::size_t i = 0; i < fit.lambda_grid.size(); ++i)
            samples.push_back(json{{"lambda", fit.lambda_grid[i]}, {"lambda_n", fit.samples[i]}});
        json j{{"c2", fit.c2},
               {"c3", fit.c3},
               {"c4", fit.c4},
               {"residual_max", fit.residual_max},
               {"n", fit.n},
               {"seq_label", fit.seq_label},
               {"samples", samples}};
        write_output(args.out, j.dump(2) + "\n");
    }
    return 0;
}

struct EnvelopeArgs {
    SeqOptions seq;
    std::string method = "auto";
    std::string lambda_grid;
    std::string out;
};

int run_envelope(const EnvelopeArgs& args) {
    const lacmgf::LacunarySequence seq = args.seq.resolve();
    const std::vector<double> grid = args.lambda_grid.empty() ? lacmgf::default_envelope_grid()
                                                              : parse_grid(args.lambda_grid);
    const lacmgf::EnvelopeResult r = lacmgf::envelope_check(seq, grid, parse_method(args.method));
    json j{{"ratio", r.ratio},
           {"argmax_lambda", r.argmax_lambda},
           {"n", r.n},
           {"seq_label", seq.label}};
    write_output(args.out, j.dump(2) + "\n");
    return 0;
}

struct RateArgs {
    SeqOptions seq;
    bool quadratic = false;
    std::string method = "auto";
    std::string lambda_grid = "-0.6:0.6:0.0005";
    std::vector<double> ts;
    std::string t_grid;
    std::string format = "csv";
    std::string out;
};

int run_rate(const RateArgs& args) {
    std::vector<double> ts = args.ts;
    if (!args.t_grid.empty()) {
        const auto extra = parse_grid(args.t_grid, /*drop_zero=*/false);
        ts.insert(ts.end(), extra.begin(), extra.end());
    }
    if (ts.empty()) throw lacmgf::DomainError("rate: need --t or --t-grid");

    // the Legendre sampling grid may include 0 (Lambda(0) = 0 is exact)
    std::vector<double> lambdas = parse_grid(args.lambda_grid, /*drop_zero=*/false);
    std::sort(lambdas.begin(), lambdas.end());
    std::vector<double> values;
    values.reserve(lambdas.size());
    if (args.quadratic) {
        for (double l : lambdas) values.push_back(l * l / 2.0);
    } else {
        const lacmgf::LacunarySequence seq = args.seq.resolve();
        const auto method = parse_method(args.method);
        for (double l : lambdas) {
            const lacmgf::MgfEstimate est = method
                                                ? (*method == lacmgf::Method::quadrature
                                                       ? lacmgf::mgf_quadrature(seq, l)
                                                       : lacmgf::mgf_diophantine(seq, l))
                                                : lacmgf::mgf_auto(seq, l);
            values.push_back(est.log_value / static_cast<double>(est.n));
        }
    }

    if (args.format == "json") {
        json arr = json::array();
        for (double t : ts) {
            const lacmgf::RateResult r = lacmgf::legendre_rate(lambdas, values, t);
            arr.push_back(json{{"t", t},
                               {"rate", r.rate},
                               {"argmax_lambda", r.argmax_lambda},
                               {"boundary", r.boundary}});
        }
        write_output(args.out, arr.dump(2) + "\n");
    } else {
        std::string csv = "t,rate\n";
        for (double t : ts)
            csv += fmt17(t) + "," + fmt17(lacmgf::legendre_rate(lambdas, values, t).rate) + "\n";
        write_output(args.out, csv);
    }
    return 0;
}

struct TailArgs {
    SeqOptions seq;
    double lambda_scale = 0.0;
    std::vector<double> ts;
    std::string t_grid;
    unsigned long long grid_points = 1ull << 24;
    std::string format = "csv";
    std::string out;
};

int run_tail(const TailArgs& args) {
    const lacmgf::LacunarySequence seq = args.seq.resolve();
    std::vector<double> ts = args.ts;
    if (!args.t_grid.empty()) {
        const auto extra = parse_grid(args.t_grid, /*drop_zero=*/false);
        ts.insert(ts.end(), extra.begin(), extra.end());
    }
    if (ts.empty()) throw lacmgf::DomainError("tail: need --t or --t-grid");

    const auto estimates =
        lacmgf::empirical_tail_multi(seq, args.lambda_scale, ts, args.grid_points, threads_flag);
    if (args.format == "json") {
        json arr = json::array();
        for (const auto& est : estimates)
            arr.push_back(json{{"t", est.t},
                               {"lambda", est.lambda},
                               {"n", est.n},
                               {"measure", est.measure},
                               {"grid_points", est.grid_points},
                               {"mdp_normalized", est.mdp_normalized},
                               {"gaussian_target", est.gaussian_target},
                               {"resolution_bound", est.resolution_bound},
                               {"zero_flagged", est.zero_flagged}});
        write_output(args.out, arr.dump(2) + "\n");
    } else {
        std::string csv = "t,measure,mdp_normalized,gaussian_target\n";
        for (const auto& est : estimates)
            csv += fmt17(est.t) + "," + fmt17(est.measure) + "," + fmt17(est.mdp_normalized) +
                   "," + fmt17(est.gaussian_target) + "\n";
        write_output(args.out, csv);
    }
    return 0;
}

constexpr const char* kUsage =
    "usage: lacmgf <mgf|blocks|count|probe|bessel-coeffs|fit|envelope|rate|tail> [options]\n"
    "run 'lacmgf --help' for details\n";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment generating functions of lacunary trigonometric sums"};
    app.require_subcommand(0, 1);
    app.add_option("--threads", threads_flag, "worker count (0 = auto)");

    MgfArgs mgf_args;
    auto* mgf = app.add_subcommand("mgf", "MGF by quadrature and/or Diophantine expansion");
    add_seq_options(mgf, mgf_args.seq);
    mgf->add_option("--lambda", mgf_args.lambda, "evaluation point in [-1, 1]");
    mgf->add_option("--lambda-grid", mgf_args.lambda_grid, "a:b:step grid (zeros dropped)");
    mgf->add_option("--method", mgf_args.method, "quad | dio | both | auto")
        ->check(CLI::IsMember({"quad", "dio", "both", "auto"}));
    mgf->add_option("--oversample", mgf_args.oversample, "grid points per bandwidth unit (>= 4)");
    mgf->add_option("--m-max", mgf_args.order_cap, "Bessel order cap for dio (<= 8)");
    mgf->add_option("--format", mgf_args.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    mgf->add_option("--out", mgf_args.out, "output file (default stdout)");

    BlocksArgs blocks_args;
    auto* blocks = app.add_subcommand("blocks", "block decomposition of {1..N} as JSON");
    add_seq_options(blocks, blocks_args.seq);
    blocks->add_option("--n", blocks_args.n, "index count N")->required();
    blocks->add_option("--q", blocks_args.q_text, "gap ratio q as integer or p/q");
    blocks->add_option("--lambda", blocks_args.lambda, "lambda fixing L = ceil(1/(2|lambda|))");
    blocks->add_option("--block-l", blocks_args.block_l, "long block length L (overrides --lambda)");
    blocks->add_option("--block-s", blocks_args.block_s, "short block length s (overrides --q)");
    blocks->add_option("--out", blocks_args.out, "output file");

    CountArgs count_args;
    auto* count = app.add_subcommand("count", "near-solution counts per long block as CSV");
    add_seq_options(count, count_args.seq);
    count->add_option("--kind", count_args.kind, "two | three | ppmm | pppm");
    count->add_option("--lambda", count_args.lambda, "lambda fixing L");
    count->add_option("--block-l", count_args.block_l, "long block length L");
    count->add_option("--block-s", count_args.block_s, "short block length s");
    count->add_flag("--include-diagonal", count_args.include_diagonal,
                    "keep k1 == k2 pairs in the two-term count");
    count->add_option("--out", count_args.out, "output file");

    ProbeArgs probe_args;
    auto* probe = app.add_subcommand("probe", "max block count vs L scaling table as CSV");
    add_seq_options(probe, probe_args.seq);
    probe->add_option("--kind", probe_args.kind, "two | three | ppmm | pppm");
    probe->add_option("--l-values", probe_args.l_values, "list of L values")->delimiter(',');
    probe->add_option("--out", probe_args.out, "output file");

    BesselArgs bessel_args;
    auto* bessel = app.add_subcommand("bessel-coeffs",
                                      "exact rational coefficients of log I0(sqrt(2) lambda)");
    bessel->add_option("--order", bessel_args.order, "2 | 4 | 6 | 8");
    bessel->add_option("--format", bessel_args.format, "csv | json")
        ->check(CLI::IsMember({"json", "csv"}));
    bessel->add_option("--out", bessel_args.out, "output file");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "least-squares fit of Lambda_N against lambda^{2,3,4}");
    add_seq_options(fit, fit_args.seq);
    fit->add_option("--limit", fit_args.limit, "fit the pair|triple block limit function");
    fit->add_option("--method", fit_args.method, "quad | dio | auto");
    fit->add_option("--lambda-grid", fit_args.lambda_grid, "a:b:step (default ±0.01..±0.07)");
    fit->add_option("--format", fit_args.format, "json | csv (csv = fit input samples)")
        ->check(CLI::IsMember({"json", "csv"}));
    fit->add_option("--out", fit_args.out, "output file");

    EnvelopeArgs env_args;
    auto* envelope =
        app.add_subcommand("envelope", "max |Lambda_N - lambda^2/2| / |lambda|^3 over a grid");
    add_seq_options(envelope, env_args.seq);
    envelope->add_option("--method", env_args.method, "quad | dio | auto");
    envelope->add_option("--lambda-grid", env_args.lambda_grid, "a:b:step (default ±0.05..±0.25)");
    envelope->add_option("--out", env_args.out, "output file");

    RateArgs rate_args;
    auto* rate = app.add_subcommand("rate", "discrete Legendre transform of sampled Lambda");
    add_seq_options(rate, rate_args.seq);
    rate->add_flag("--quadratic", rate_args.quadratic, "sample Lambda(lambda) = lambda^2/2");
    rate->add_option("--method", rate_args.method, "quad | dio | auto");
    rate->add_option("--lambda-grid", rate_args.lambda_grid, "sampling grid a:b:step");
    rate->add_option("--t", rate_args.ts, "transform argument (repeatable)");
    rate->add_option("--t-grid", rate_args.t_grid, "a:b:step of transform arguments");
    rate->add_option("--format", rate_args.format, "csv | json")
        ->check(CLI::IsMember({"json", "csv"}));
    rate->add_option("--out", rate_args.out, "output file");

    TailArgs tail_args;
    auto* tail = app.add_subcommand("tail", "level-set measure of the MDP-scaled sum");
    add_seq_options(tail, tail_args.seq);
    tail->add_option("--lambda-scale", tail_args.lambda_scale, "MDP scaling lambda_N")->required();
    tail->add_option("--t", tail_args.ts, "threshold (repeatable)");
    tail->add_option("--t-grid", tail_args.t_grid, "a:b:step of thresholds");
    tail->add_option("--grid-points", tail_args.grid_points, "sample count (default 2^24)");
    tail->add_option("--format", tail_args.format, "csv | json")
        ->check(CLI::IsMember({"json", "csv"}));
    tail->add_option("--out", tail_args.out, "output file");

    // unknown subcommand: usage text, exit 64
    if (argc > 1 && argv[1][0] != '-') {
        const std::string name = argv[1];
        static const char* known[] = {"mgf",  "blocks",        "count", "probe", "bessel-coeffs",
                                      "fit",  "envelope",      "rate",  "tail"};
        bool ok = false;
        for (const char* k : known) ok = ok || name == k;
        if (!ok) {
            std::cerr << "lacmgf: unknown subcommand '" << name << "'\n" << kUsage;
            return 64;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*mgf) return run_mgf(mgf_args);
        if (*blocks) return run_blocks(blocks_args);
        if (*count) return run_count(count_args);
        if (*probe) return run_probe(probe_args);
        if (*bessel) return run_bessel_coeffs(bessel_args);
        if (*fit) return run_fit(fit_args);
        if (*envelope) return run_envelope(env_args);
        if (*rate) return run_rate(rate_args);
        if (*tail) return run_tail(tail_args);
        std::cerr << kUsage;
        return 64;
    } catch (const lacmgf::Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const lacmgf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
