// alphanorm: compute alpha-norms and related quantities, evaluate block
// bounds, run the verification suites and sweep bound parameters.
//
// Exit codes: 0 success, 1 verification failure, 2 malformed input or I/O,
// 3 invalid flags or a theorem that does not apply to the input.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alphanorm/bounds.hpp"
#include "alphanorm/errors.hpp"
#include "alphanorm/harness.hpp"
#include "alphanorm/json_io.hpp"

using namespace alphanorm;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kBadInput = 2, kBadFlags = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) throw IoError("cannot write '" + path + "'");
}

// Matrix JSON, or block-matrix JSON which is assembled.
ComplexMatrix load_matrix(const std::string& path) {
    const std::string text = read_file(path);
    if (text.find("\"blocks\"") != std::string::npos) return assemble(block_matrix_from_json(text));
    return matrix_from_json(text);
}

void check_alpha(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw UsageError("alpha must lie in [0,1]");
}
void check_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw UsageError("p must be ≥ 1");
}
void check_s(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw UsageError("s must lie in [0,1]");
}

double parse_number(const std::string& tok, const std::string& grid) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != tok.size() || !std::isfinite(v)) throw UsageError("malformed grid '" + grid + "'");
    return v;
}

// "start:stop:step" (inclusive, step must divide the range) or "a,b,c".
std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, sep);) parts.push_back(tok);
    if (text.empty() || text.back() == sep) throw UsageError("malformed grid '" + text + "'");

    std::vector<double> out;
    if (sep == ',') {
        for (const auto& tok : parts) out.push_back(parse_number(tok, text));
        return out;
    }
    if (parts.size() != 3) throw UsageError("malformed grid '" + text + "': expected start:stop:step");
    const double start = parse_number(parts[0], text);
    const double stop = parse_number(parts[1], text);
    const double step = parse_number(parts[2], text);
    if (!(step > 0.0) || stop < start) throw UsageError("malformed grid '" + text + "'");
    const double steps = (stop - start) / step;
    const double k = std::round(steps);
    if (std::abs(steps - k) > 1e-9 * std::max(1.0, steps) || k > 1e6) {
        throw UsageError("malformed grid '" + text + "': step does not divide the range");
    }
    const auto count = static_cast<long>(k);
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    out.push_back(stop);
    return out;
}

std::string json_vector(const ComplexVector& v) {
    std::string re = "[", im = "[";
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const char* comma = k ? "," : "";
        re += comma + fmt17(v(k).real());
        im += comma + fmt17(v(k).imag());
    }
    return "{\"re\":" + re + "],\"im\":" + im + "]}";
}

// ---- compute ----

struct ComputeArgs {
    std::string input, quantity;
    std::optional<double> alpha;
};

int run_compute(const ComputeArgs& args) {
    if (args.quantity == "alphanorm") {
        if (!args.alpha) throw UsageError("--alpha is required for --quantity alphanorm");
        check_alpha(*args.alpha);
    }
    const ComplexMatrix m = load_matrix(args.input);
    if (args.quantity == "opnorm") {
        const double v = operator_norm(m);
        std::cout << fmt9(v) << "\n{\"quantity\":\"opnorm\",\"value\":" << fmt17(v) << "}\n";
    } else if (args.quantity == "specrad") {
        const double v = spectral_radius(m);
        std::cout << fmt9(v) << "\n{\"quantity\":\"specrad\",\"value\":" << fmt17(v) << "}\n";
    } else if (args.quantity == "numrad") {
        const NumericalRadiusResult r = numerical_radius_enclosure(m);
        std::cout << fmt9(r.value) << "\n{\"quantity\":\"numrad\",\"value\":" << fmt17(r.value)
                  << ",\"lower\":" << fmt17(r.lower) << ",\"upper\":" << fmt17(r.upper)
                  << ",\"theta\":" << fmt17(r.theta) << "}\n";
    } else {
        const AlphaNormResult r = alpha_norm(m, AlphaSpec(*args.alpha));
        std::cout << fmt9(r.value) << "\nenclosure [" << fmt9(r.lower) << ", " << fmt9(r.upper) << "]\n"
                  << "{\"quantity\":\"alphanorm\",\"alpha\":" << fmt17(*args.alpha) << ",\"value\":" << fmt17(r.value)
                  << ",\"lower\":" << fmt17(r.lower) << ",\"upper\":" << fmt17(r.upper)
                  << ",\"converged\":" << (r.converged ? "true" : "false") << ",\"witness\":" << json_vector(r.witness)
                  << "}\n";
    }
    return kOk;
}

// ---- bound ----

struct BoundArgs {
    std::string input, theorem, builder = "est6", out;
    std::optional<double> alpha;
    bool minimize = false;
    double p = 1.0, s = 0.5;
    bool strict = false;
};

CorollaryBuilder corollary_builder(const std::string& name) {
    if (name == "est6") return CorollaryBuilder::est6;
    if (name == "est7") return CorollaryBuilder::est7;
    if (name == "est9") return CorollaryBuilder::est9;
    throw UsageError("--builder must be est6, est7 or est9");
}

std::vector<BoundReport> est1_reports(const BlockMatrix& t, AlphaSpec a) {
    if (t.n() != 2 || !t.square_diagonal() || !t.block(0, 1).isZero(0.0) || !t.block(1, 0).isZero(0.0)) {
        throw DimensionError("est1 needs a 2x2 block-diagonal input with square diagonal blocks");
    }
    const DiagBlockBounds b = diag_block_bounds(t.block(0, 0), t.block(1, 1), a);
    const double reference = alpha_norm(assemble(t), a).value;
    std::vector<BoundReport> out;
    const std::pair<Theorem, double> parts[] = {
        {Theorem::est1_i, b.upper_i}, {Theorem::est1_ii, b.upper_ii}, {Theorem::est1_iii, b.upper_iii}};
    for (const auto& [th, v] : parts) {
        BoundReport r;
        r.theorem = th;
        r.value = v;
        r.alpha = a.value();
        r.reference = reference;
        if (reference > 0.0) r.tightness = v / reference;
        r.cap = b.lower;
        out.push_back(r);
    }
    return out;
}

int run_bound(const BoundArgs& args) {
    static const std::vector<std::string> theorems{"est1", "est6", "est7", "est8", "est9", "cor_w", "cor_opnorm"};
    if (std::find(theorems.begin(), theorems.end(), args.theorem) == theorems.end()) {
        throw UsageError("unknown theorem '" + args.theorem + "'");
    }
    if (args.alpha) check_alpha(*args.alpha);
    check_p(args.p);
    check_s(args.s);
    const bool corollary = args.theorem == "cor_w" || args.theorem == "cor_opnorm";
    if (corollary && args.alpha) throw UsageError(args.theorem + " minimizes over alpha; use --minimize");
    if (!corollary && !args.alpha && !args.minimize) throw UsageError("one of --alpha or --minimize is required");
    if (args.theorem == "est1" && args.minimize) throw UsageError("est1 needs --alpha");
    if (args.theorem != "est8" && args.p != 1.0) throw UsageError("--p applies to est8 only");
    const CorollaryBuilder builder = corollary_builder(args.builder);

    const BlockMatrix t = block_matrix_from_json(read_file(args.input));
    BoundOptions opts;
    opts.builder.strict = args.strict;
    const SymbolFunctionPair fg = SymbolFunctionPair::power(args.s);

    std::vector<BoundReport> reports;
    if (args.theorem == "est1") {
        reports = est1_reports(t, AlphaSpec(*args.alpha));
    } else if (args.theorem == "cor_w") {
        reports.push_back(corollary_w_bound(t, builder, fg, opts));
    } else if (args.theorem == "cor_opnorm") {
        reports.push_back(corollary_opnorm_bound(t, opts));
    } else {
        const Theorem th = theorem_from_string(args.theorem);
        if (args.minimize) {
            reports.push_back(minimized_bound(t, th, fg, args.p, opts));
        } else {
            const AlphaSpec a(*args.alpha);
            switch (th) {
                case Theorem::est6: reports.push_back(bound_est6(t, a, opts)); break;
                case Theorem::est7: reports.push_back(bound_est7(t, a, fg, opts)); break;
                case Theorem::est8: reports.push_back(bound_est8(t, a, fg, args.p, opts)); break;
                default: reports.push_back(bound_est9(t, a, fg, opts)); break;
            }
        }
    }

    std::string text;
    if (reports.size() == 1) {
        text = bound_report_to_json(reports.front());
    } else {
        text = "[";
        for (std::size_t k = 0; k < reports.size(); ++k) text += (k ? "," : "") + bound_report_to_json(reports[k]);
        text += "]";
    }
    text += "\n";
    std::cout << text;
    for (const BoundReport& r : reports) {
        std::cout << to_string(r.theorem) << ": value " << fmt9(r.value) << ", reference " << fmt9(r.reference)
                  << ", alpha " << fmt9(r.alpha) << "\n";
    }
    if (!args.out.empty()) write_text(args.out, text);
    return kOk;
}

// ---- verify ----

struct VerifyArgs {
    std::string suite = "all", out;
    long long trials = 10;
    std::uint64_t seed = 42;
    bool csv = false;
    std::optional<double> tol;
    double inject = 0.0;
};

std::string csv_path_for(const std::string& out) {
    const auto dot = out.find_last_of('.');
    const auto slash = out.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + ".csv";
    return out.substr(0, dot) + ".csv";
}

int run_verify(const VerifyArgs& args) {
    if (args.trials < 1) throw UsageError("trials must be ≥ 1");
    if (args.tol && !(*args.tol > 0.0)) throw UsageError("--tol must be positive");
    SuiteConfig cfg = default_suite(args.suite, static_cast<std::size_t>(args.trials), args.seed);
    if (args.tol) cfg.verdict_tol = *args.tol;
    cfg.inject_bound_offset = args.inject;
    const SuiteReport report = run_suite(cfg);

    if (!args.out.empty()) {
        write_text(args.out, suite_report_to_json(report) + "\n");
    }
    if (args.csv) {
        std::ostringstream csv;
        write_suite_csv(csv, report);
        if (args.out.empty()) {
            std::cout << csv.str();
        } else {
            write_text(csv_path_for(args.out), csv.str());
        }
    }

    const SuiteSummary& s = report.summary;
    std::cerr << "suite " << args.suite << ": " << s.total << " checks, " << s.passed << " passed, " << s.failed
              << " failed, " << s.errors << " errors";
    if (s.min_slack) std::cerr << ", min slack " << fmt9(*s.min_slack);
    std::cerr << "\n";
    for (const auto& [th, v] : s.mean_tightness) std::cerr << "  mean tightness " << th << " " << fmt9(v) << "\n";
    if ((s.failed > 0 || s.errors > 0) && s.worst) {
        const CheckRecord& w = *s.worst;
        std::cerr << "worst: " << w.check_id << " seed " << w.seed << " lhs " << fmt9(w.lhs) << " rhs "
                  << fmt9(w.rhs) << " " << to_string(w.verdict);
        if (!w.message.empty()) std::cerr << " (" << w.message << ")";
        std::cerr << "\n";
    }
    return (s.failed > 0 || s.errors > 0) ? kCheckFailed : kOk;
}

// ---- sweep ----

struct SweepArgs {
    std::string input, theorem = "est6", out;
    std::string alpha_grid = "0:1:0.05", p_grid = "1", s_grid = "0.5";
    bool strict = false;
};

int run_sweep(const SweepArgs& args) {
    if (args.theorem != "est6" && args.theorem != "est7" && args.theorem != "est8" && args.theorem != "est9") {
        throw UsageError("sweep supports est6, est7, est8 and est9");
    }
    const Theorem th = theorem_from_string(args.theorem);
    const std::vector<double> alphas = parse_grid(args.alpha_grid);
    std::vector<double> ps = th == Theorem::est8 ? parse_grid(args.p_grid) : std::vector<double>{1.0};
    std::vector<std::optional<double>> ss;
    if (th == Theorem::est6) {
        ss.push_back(std::nullopt);
    } else {
        for (double s : parse_grid(args.s_grid)) ss.emplace_back(s);
    }
    for (double a : alphas) check_alpha(a);
    for (double p : ps) check_p(p);
    for (const auto& s : ss)
        if (s) check_s(*s);

    const BlockMatrix t = block_matrix_from_json(read_file(args.input));
    const ComplexMatrix m = assemble(t);
    BoundOptions opts;
    opts.builder.strict = args.strict;

    std::map<double, double> references;
    const auto reference = [&](double a) {
        auto it = references.find(a);
        if (it == references.end()) it = references.emplace(a, alpha_norm(m, AlphaSpec(a)).value).first;
        return it->second;
    };

    std::ostringstream csv;
    csv << "row,theorem,alpha,p,s,value,reference,tightness\n";
    const auto emit = [&](const char* kind, const BoundReport& r) {
        csv << kind << ',' << to_string(r.theorem) << ',' << fmt17(r.alpha) << ',' << (r.p ? fmt17(*r.p) : "")
            << ',' << (r.s ? fmt17(*r.s) : "") << ',' << fmt17(r.value) << ',' << fmt17(r.reference) << ','
            << (r.tightness ? fmt17(*r.tightness) : "") << '\n';
    };

    std::optional<BoundReport> best;
    for (const auto& s : ss) {
        const SymbolFunctionPair fg = SymbolFunctionPair::power(s.value_or(0.5));
        for (double p : ps) {
            for (double a : alphas) {
                opts.reference = reference(a);
                const AlphaSpec spec(a);
                BoundReport r;
                switch (th) {
                    case Theorem::est6: r = bound_est6(t, spec, opts); break;
                    case Theorem::est7: r = bound_est7(t, spec, fg, opts); break;
                    case Theorem::est8: r = bound_est8(t, spec, fg, p, opts); break;
                    default: r = bound_est9(t, spec, fg, opts); break;
                }
                emit("grid", r);
                if (!best || r.value < best->value) best = r;
            }
        }
    }
    emit("argmin", *best);

    if (args.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text(args.out, csv.str());
        std::cout << "argmin alpha " << fmt9(best->alpha) << " value " << fmt9(best->value) << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-norm bounds for block operator matrices"};
    app.require_subcommand(1);

    ComputeArgs compute;
    auto* c = app.add_subcommand("compute", "Compute a norm of a matrix");
    c->add_option("--input", compute.input, "Matrix JSON (or block-matrix JSON)")->required();
    c->add_option("--quantity", compute.quantity, "opnorm | specrad | numrad | alphanorm")
        ->required()
        ->check(CLI::IsMember({"opnorm", "specrad", "numrad", "alphanorm"}));
    c->add_option("--alpha", compute.alpha, "Weight in [0,1]");

    BoundArgs bound;
    auto* b = app.add_subcommand("bound", "Evaluate a block bound");
    b->add_option("--input", bound.input, "Block-matrix JSON")->required();
    b->add_option("--theorem", bound.theorem, "est1 | est6 | est7 | est8 | est9 | cor_w | cor_opnorm")->required();
    auto* alpha_opt = b->add_option("--alpha", bound.alpha, "Weight in [0,1]");
    auto* min_flag = b->add_flag("--minimize", bound.minimize, "Minimize the bound over alpha");
    alpha_opt->excludes(min_flag);
    b->add_option("--p", bound.p, "Power p >= 1 (est8)");
    b->add_option("--s", bound.s, "Exponent s of f(t) = t^s, g(t) = t^(1-s)");
    b->add_option("--builder", bound.builder, "T~ construction for cor_w: est6 | est7 | est9");
    b->add_flag("--strict", bound.strict, "Require all blocks to act on one space");
    b->add_option("--out", bound.out, "Write the report JSON here");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Run a verification suite");
    v->add_option("--suite", verify.suite, "all | est6 | est7 | est8 | est9 | prop21 | equal1 | est1 | lemmas")
        ->check(CLI::IsMember(suite_names()));
    v->add_option("--trials", verify.trials, "Trials per ensemble");
    v->add_option("--seed", verify.seed, "Master seed");
    v->add_option("--out", verify.out, "Write the JSON report here");
    v->add_flag("--csv", verify.csv, "Also emit the CSV report (next to --out, else stdout)");
    v->add_option("--tol", verify.tol, "Inequality verdict tolerance");
    v->add_option("--inject-bound-offset", verify.inject, "Subtract this from every bound (harness self-test)");

    SweepArgs sweep;
    auto* w = app.add_subcommand("sweep", "Tabulate a bound over parameter grids");
    w->add_option("--input", sweep.input, "Block-matrix JSON")->required();
    w->add_option("--theorem", sweep.theorem, "est6 | est7 | est8 | est9");
    w->add_option("--alpha-grid", sweep.alpha_grid, "start:stop:step or a,b,c");
    w->add_option("--p-grid", sweep.p_grid, "start:stop:step or a,b,c (est8)");
    w->add_option("--s-grid", sweep.s_grid, "start:stop:step or a,b,c");
    w->add_flag("--strict", sweep.strict, "Require all blocks to act on one space");
    w->add_option("--out", sweep.out, "Write the CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadFlags;
    }

    try {
        if (*c) return run_compute(compute);
        if (*b) return run_bound(bound);
        if (*v) return run_verify(verify);
        return run_sweep(sweep);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadFlags;
    } catch (const ParseError& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return kBadInput;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadFlags;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadFlags;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
}
