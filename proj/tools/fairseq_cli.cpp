#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fairseq/acceptance.hpp"
#include "fairseq/complexity.hpp"
#include "fairseq/errors.hpp"
#include "fairseq/figures.hpp"
#include "fairseq/geometry/export.hpp"
#include "fairseq/geometry/partition.hpp"
#include "fairseq/geometry/projection.hpp"
#include "fairseq/io.hpp"
#include "fairseq/irrationality.hpp"
#include "fairseq/sampling.hpp"
#include "fairseq/sequences.hpp"
#include "fairseq/version.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace fairseq;

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitVerifyFail = 4;
constexpr std::size_t kCurvePoints = 1000;

struct IoError : Error {
    using Error::Error;
};

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("failed to write '" + path + "'");
}

std::vector<double> to_vector(std::span<const double> v) { return {v.begin(), v.end()}; }

struct ParamArgs {
    std::string alpha;
    std::string params = "canonical";
    std::string C;
    std::string C_prime;
    std::string x0 = "zero";
};

void add_param_options(CLI::App* cmd, ParamArgs& a, bool alpha_required) {
    auto* opt = cmd->add_option("--alpha", a.alpha, "Comma-separated letter frequencies summing to 1");
    if (alpha_required) opt->required();
    cmd->add_option("--params", a.params, "'canonical' or 'explicit' (use --C and --C-prime)");
    cmd->add_option("--C", a.C, "Parameter C, or 'canonical'");
    cmd->add_option("--C-prime", a.C_prime, "Parameter C', or 'canonical'");
    cmd->add_option("--x0", a.x0, "Starting point (sum-zero decimals) or 'zero'");
}

SumZeroVector parse_x0(const std::string& text, std::size_t d) {
    if (text == "zero") return SumZeroVector::zero(d);
    auto v = io::parse_double_list(text);
    if (v.size() != d) throw InvalidArgument("x0 must have " + std::to_string(d) + " coordinates");
    return SumZeroVector(std::move(v));
}

TijdemanParams build_params(const ParamArgs& a, const FrequencyVector& alpha) {
    const auto canonical = canonical_params(alpha);
    double C = canonical.C(), Cp = canonical.C_prime();
    if (a.params != "canonical" && a.params != "explicit")
        throw InvalidArgument("--params must be 'canonical' or 'explicit'");
    if (!a.C.empty() && a.C != "canonical") C = io::parse_double(a.C);
    if (!a.C_prime.empty() && a.C_prime != "canonical") Cp = io::parse_double(a.C_prime);
    if (a.params == "explicit" && (a.C.empty() || a.C_prime.empty()))
        throw InvalidArgument("--params explicit needs --C and --C-prime");
    return TijdemanParams(alpha, C, Cp, parse_x0(a.x0, alpha.dim()));
}

// generate ---------------------------------------------------------------

struct GenerateArgs {
    ParamArgs p;
    std::string kind = "tijdeman";
    std::size_t steps = 0;
    std::string out = "-";
    std::string summary;
    bool raw = false;
    bool assert_irrational = false;
};

int cmd_generate(const GenerateArgs& a) {
    const FrequencyVector alpha(io::parse_double_list(a.p.alpha));
    if (a.assert_irrational)
        if (const auto rel = find_rational_relation(alpha))
            throw InvalidArgument("alpha looks rational: " + rel->description);
    TraceOptions topt;
    topt.keep_points = false;
    topt.curve_samples = kCurvePoints;
    io::SequenceHeader header;
    header.kind = a.kind;
    header.alpha = to_vector(alpha.values());
    if (a.kind != "tijdeman" && a.kind != "billiard") throw InvalidArgument("--kind must be 'tijdeman' or 'billiard'");
    const OrbitTrace trace = [&] {
        if (a.kind == "billiard") return billiard_generate(parse_x0(a.p.x0, alpha.dim()), alpha, a.steps, topt);
        const auto params = build_params(a.p, alpha);
        header.C = params.C();
        header.C_prime = params.C_prime();
        return tijdeman_generate(params, a.steps, topt);
    }();
    header.x0 = to_vector(trace.x0.values());

    std::ostringstream seq;
    if (a.raw) {
        for (std::size_t i = 0; i < trace.letters.size(); ++i) seq << (i ? " " : "") << int(trace.letters[i]);
        seq << '\n';
    } else {
        io::write_sequence(seq, trace.letters, header);
    }
    write_text(a.out, seq.str());

    json curve = json::array();
    for (const auto& [n, v] : trace.running_max_curve) curve.push_back({n, v});
    json summary{{"schema", 1},
                 {"kind", a.kind},
                 {"alpha", *header.alpha},
                 {"alpha_is_float", true},
                 {"C", header.C ? json(*header.C) : json(nullptr)},
                 {"C_prime", header.C_prime ? json(*header.C_prime) : json(nullptr)},
                 {"x0", *header.x0},
                 {"N", trace.steps()},
                 {"discrepancy_prefix", discrepancy_prefix(trace.letters, alpha)},
                 {"coord_min", trace.coord_min},
                 {"coord_max", trace.coord_max},
                 {"running_max", curve}};
    std::string summary_path = a.summary;
    if (summary_path.empty() && a.out != "-") summary_path = a.out + ".json";
    if (!summary_path.empty()) write_text(summary_path, json_text(summary));
    return 0;
}

// analyze ----------------------------------------------------------------

struct AnalyzeArgs {
    std::string input = "-";
    std::string alpha;
    std::size_t max_window = 1000;
    std::size_t n_max = 50;
    std::vector<std::size_t> abelian = {1, 2, 5, 10};
    std::string out = "-";
    std::string csv;
};

int cmd_analyze(const AnalyzeArgs& a) {
    io::SequenceFile file;
    if (a.input == "-") {
        file = io::read_sequence(std::cin);
    } else {
        std::ifstream in(a.input);
        if (!in) throw IoError("cannot open '" + a.input + "'");
        file = io::read_sequence(in);
    }
    const auto& w = file.word;
    const std::size_t L = w.size();
    std::optional<FrequencyVector> alpha;
    std::string alpha_source = "none";
    if (!a.alpha.empty()) {
        alpha.emplace(io::parse_double_list(a.alpha));
        alpha_source = "option";
    } else if (file.header.alpha) {
        alpha.emplace(*file.header.alpha);
        alpha_source = "header";
    }
    if (alpha && alpha->dim() != w.alphabet_size()) throw InvalidArgument("alpha does not match the alphabet size");

    json params{{"d", w.alphabet_size()}, {"alpha_source", alpha_source}};
    if (alpha) {
        params["alpha"] = to_vector(alpha->values());
        params["alpha_is_float"] = true;
    }
    if (!file.header.kind.empty()) params["kind"] = file.header.kind;
    if (file.header.C) params["C"] = *file.header.C;
    if (file.header.C_prime) params["C_prime"] = *file.header.C_prime;
    if (file.header.x0) params["x0"] = *file.header.x0;

    json report{{"schema", 1}, {"params", params}, {"N", L}};
    report["discrepancy"] = alpha ? discrepancy_prefix(w, *alpha) : 0.0;
    const std::size_t window = std::min(a.max_window, L);
    report["balance"] = balance(w, window);
    report["balance_window"] = window;
    report["balance_upper_bound"] = L ? balance_upper_bound(w) : 0;
    json abelian = json::object();
    for (auto n : a.abelian)
        if (n >= 1 && n <= L) abelian[std::to_string(n)] = abelian_complexity(w, n);
    report["abelian"] = abelian;
    const std::size_t n_max = std::min(a.n_max, L / 10);
    json profile = json::array();
    std::string csv = "n,p_n\n";
    if (n_max >= 1) {
        const auto prof = complexity::complexity_profile(w, n_max);
        for (std::size_t n = 1; n <= n_max; ++n) {
            profile.push_back(prof.at(n));
            csv += std::to_string(n) + "," + std::to_string(prof.at(n)) + "\n";
        }
        report["complexity_profile"] = profile;
        report["saturation_warning"] = prof.saturation_warning;
        const std::size_t lo = std::max<std::size_t>(2, std::min<std::size_t>(10, n_max / 5));
        if (n_max >= lo + 4) {
            report["exponent"] = complexity::exponent_fit(prof, lo, n_max);
            report["fit_range"] = {lo, n_max};
        }
    } else {
        report["complexity_profile"] = profile;
    }
    write_text(a.out, json_text(report));
    if (!a.csv.empty()) write_text(a.csv, csv);
    return 0;
}

// partition --------------------------------------------------------------

struct PartitionArgs {
    ParamArgs p;
    std::string figure;
    std::string kind = "tijdeman";
    int n_cap = 5000;
    std::string json_out;
    std::string svg_out;
};

int cmd_partition(const PartitionArgs& a) {
    geometry::PartitionOptions opt;
    opt.n_cap = a.n_cap;
    geometry::ExchangeSystem system = [&] {
        if (!a.figure.empty()) return geometry::exact_partition_d3(figure_preset(a.figure).params(), opt);
        if (a.p.alpha.empty()) throw InvalidArgument("give --alpha or --figure");
        const FrequencyVector alpha(io::parse_double_list(a.p.alpha));
        if (alpha.dim() != 3) throw UnsupportedDimension("partition supports d = 3 only");
        if (a.kind == "hypercubic") return geometry::hypercubic_partition_d3(alpha);
        if (a.kind != "tijdeman") throw InvalidArgument("--kind must be 'tijdeman' or 'hypercubic'");
        return geometry::exact_partition_d3(build_params(a.p, alpha), opt);
    }();
    std::printf("total area %.12f\n", system.total_area());
    for (const auto& atom : system.atoms)
        std::printf("atom %d: %zu pieces, %zu components, area %.12f\n", int(atom.letter), atom.polygons.size(),
                    atom.component_count(), atom.area());
    if (!a.json_out.empty()) write_text(a.json_out, geometry::partition_to_json(system));
    if (!a.svg_out.empty()) write_text(a.svg_out, geometry::partition_to_svg(system));
    return 0;
}

// verify -----------------------------------------------------------------

struct VerifyArgs {
    std::uint64_t seed = 0;
    std::vector<std::string> checks;
    bool negative_control = false;
    std::string report;
};

int cmd_verify(const VerifyArgs& a) {
    acceptance::SuiteOptions opt;
    opt.seed = a.seed;
    opt.negative_control = a.negative_control;
    for (const auto& c : a.checks) {
        std::stringstream ss(c);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) opt.checks.push_back(item);
    }
    const auto results = acceptance::run_suite(opt);
    bool all = true;
    for (const auto& r : results) {
        std::fprintf(stderr, "%s  %-12s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.summary.c_str());
        all = all && r.pass;
    }
    write_text(a.report.empty() ? "-" : a.report, acceptance::report_json(results, opt));
    return all ? 0 : kExitVerifyFail;
}

// bench ------------------------------------------------------------------

struct BenchArgs {
    std::string kind = "tijdeman";
    std::size_t d = 3;
    std::size_t steps = 1'000'000;
    std::uint64_t seed = 0;
    std::string figure = "f2";
};

int cmd_bench(const BenchArgs& a) {
    using clock = std::chrono::steady_clock;
    json out{{"schema", 1}, {"kind", a.kind}};
    if (a.kind == "partition") {
        geometry::PartitionStats stats;
        const auto t0 = clock::now();
        geometry::exact_partition_d3(figure_preset(a.figure).params(), {}, &stats);
        const double sec = std::chrono::duration<double>(clock::now() - t0).count();
        out.update({{"figure", a.figure},
                    {"iterations", stats.iterations},
                    {"cells_generated", stats.cells_generated},
                    {"seconds", sec},
                    {"cells_per_second", static_cast<double>(stats.cells_generated) / sec}});
    } else {
        std::mt19937_64 rng(derive_seed(a.seed, 0));
        const auto alpha = random_frequency(a.d, rng);
        TraceOptions topt;
        topt.keep_points = false;
        const auto t0 = clock::now();
        if (a.kind == "tijdeman") tijdeman_generate(canonical_params(alpha), a.steps, topt);
        else if (a.kind == "billiard")
            billiard_generate(SumZeroVector::zero(a.d), alpha, a.steps, topt);
        else throw InvalidArgument("--kind must be tijdeman, billiard or partition");
        const double sec = std::chrono::duration<double>(clock::now() - t0).count();
        out.update({{"d", a.d},
                    {"steps", a.steps},
                    {"seconds", sec},
                    {"steps_per_second", static_cast<double>(a.steps) / sec}});
    }
    std::cout << json_text(out);
    return 0;
}

// Joins "--opt -0.4,0.4" into "--opt=-0.4,0.4" so negative lists are not taken for flags.
std::vector<std::string> normalize_args(int argc, char** argv) {
    static const std::vector<std::string> value_opts{"--x0", "--alpha", "--C", "--C-prime"};
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (i + 1 < argc && std::find(value_opts.begin(), value_opts.end(), arg) != value_opts.end()) {
            const std::string next = argv[i + 1];
            if (next.size() > 1 && next[0] == '-' && (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
                args.push_back(arg + "=" + next);
                ++i;
                continue;
            }
        }
        args.push_back(arg);
    }
    std::reverse(args.begin(), args.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fairseq: minimal-discrepancy words, exchange-of-pieces partitions and their verification"};
    app.set_version_flag("--version", fairseq::kVersion);
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Generate a Tijdeman or billiard word");
    add_param_options(g, gen.p, true);
    g->add_option("--kind", gen.kind, "tijdeman or billiard");
    g->add_option("--steps,-N", gen.steps, "Number of letters")->required();
    g->add_option("--out,-o", gen.out, "Sequence file ('-' for stdout)");
    g->add_option("--summary", gen.summary, "JSON summary path (default <out>.json when --out is a file)");
    g->add_flag("--raw", gen.raw, "Write letters only, without header lines");
    g->add_flag("--assert-irrational", gen.assert_irrational,
                "Reject alpha with a small integer relation (denominators up to 1e6)");

    AnalyzeArgs an;
    auto* a = app.add_subcommand("analyze", "Discrepancy, balance, abelian and factor complexity of a sequence file");
    a->add_option("input", an.input, "Sequence file ('-' for stdin)");
    a->add_option("--alpha", an.alpha, "Frequencies (default: from the file header)");
    a->add_option("--max-window", an.max_window, "Largest window length for the balance");
    a->add_option("--n-max", an.n_max, "Largest factor length for the complexity profile");
    a->add_option("--abelian", an.abelian, "Factor lengths for the abelian complexity")->delimiter(',');
    a->add_option("--out,-o", an.out, "JSON report path");
    a->add_option("--csv", an.csv, "Complexity profile as CSV (n,p_n)");

    PartitionArgs pa;
    auto* p = app.add_subcommand("partition", "Build the d=3 fundamental domain and natural partition");
    add_param_options(p, pa.p, false);
    p->add_option("--figure", pa.figure, "Preset: f2, f3ter or f3bis");
    p->add_option("--kind", pa.kind, "tijdeman or hypercubic");
    p->add_option("--n-cap", pa.n_cap, "Refinement iteration cap");
    p->add_option("--json", pa.json_out, "Partition JSON path");
    p->add_option("--svg", pa.svg_out, "Partition SVG path");

    VerifyArgs ve;
    auto* v = app.add_subcommand("verify", "Run the acceptance suite");
    v->add_option("--seed", ve.seed, "Seed of every random draw");
    v->add_option("--checks", ve.checks, "Comma-separated subset of checks")->delimiter(',');
    v->add_flag("--negative-control", ve.negative_control, "Remove one atom before verification");
    v->add_option("--report", ve.report, "JSON report path (default stdout)");

    BenchArgs be;
    auto* b = app.add_subcommand("bench", "Throughput of generation or partition refinement");
    b->add_option("--kind", be.kind, "tijdeman, billiard or partition");
    b->add_option("--d", be.d, "Alphabet size");
    b->add_option("--steps,-N", be.steps, "Number of steps");
    b->add_option("--seed", be.seed, "Seed for the random frequency");
    b->add_option("--figure", be.figure, "Preset for partition benchmarks");

    try {
        app.parse(normalize_args(argc, argv));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*g) return cmd_generate(gen);
        if (*a) return cmd_analyze(an);
        if (*p) return cmd_partition(pa);
        if (*v) return cmd_verify(ve);
        if (*b) return cmd_bench(be);
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const NoConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoConvergence;
    } catch (const fairseq::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return 0;
}
