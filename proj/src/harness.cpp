#include "alphanorm/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <thread>
#include <utility>

#include "alphanorm/bounds.hpp"
#include "alphanorm/errors.hpp"
#include "alphanorm/random.hpp"

namespace alphanorm {

namespace {

constexpr std::array<std::pair<EnsembleKind, const char*>, 6> kKindNames{{
    {EnsembleKind::ginibre, "ginibre"},
    {EnsembleKind::hermitian, "hermitian"},
    {EnsembleKind::unitary, "unitary"},
    {EnsembleKind::nilpotent_upper, "nilpotent_upper"},
    {EnsembleKind::entrywise_nonneg, "entrywise_nonneg"},
    {EnsembleKind::diag_blocks, "diag_blocks"},
}};

// Purpose tags for the auxiliary random streams of a trial.
enum Stream : std::uint64_t {
    kBoundAlpha = 1,
    kNilpotentAlpha,
    kPropAlpha,
    kDiagAlpha,
    kScalar,
    kUnitary,
    kOracle,
    kLemma,
};

double stream_uniform(std::uint64_t trial_seed, Stream s) { return Rng(derive_seed(trial_seed, s)).uniform(); }

struct Params {
    std::optional<double> alpha, p, s;
};

// Alpha grid {0, 0.1, ..., 1}.
std::vector<double> alpha_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 10; ++k) g.push_back(k / 10.0);
    return g;
}

double gap(const AlphaNormResult& r) { return r.upper - r.lower; }

ComplexMatrix block2(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, const ComplexMatrix& d) {
    ComplexMatrix out(a.rows() + c.rows(), a.cols() + b.cols());
    out << a, b, c, d;
    return out;
}

class Trial {
public:
    Trial(const SuiteConfig& cfg, std::shared_ptr<const BlockMatrix> t, std::uint64_t seed)
        : cfg_(cfg), t_(std::move(t)), m_(assemble(*t_)), seed_(seed) {}

    std::vector<CheckRecord> take() { return std::move(out_); }

    void run(Check c) {
        try {
            dispatch(c);
        } catch (const std::exception& e) {
            CheckRecord r = base(to_string(c), to_string(c), {});
            r.verdict = Verdict::error;
            r.message = e.what();
            out_.push_back(std::move(r));
        }
    }

private:
    void dispatch(Check c) {
        switch (c) {
            case Check::est6: return check_est6();
            case Check::est7: return check_family(Theorem::est7);
            case Check::est8: return check_family(Theorem::est8);
            case Check::est9: return check_family(Theorem::est9);
            case Check::cor_w_est6: return check_cor_w(CorollaryBuilder::est6, "cor_w_est6");
            case Check::cor_w_est7: return check_cor_w(CorollaryBuilder::est7, "cor_w_est7");
            case Check::cor_w_est9: return check_cor_w(CorollaryBuilder::est9, "cor_w_est9");
            case Check::cor_opnorm: return check_cor_opnorm();
            case Check::est1: return check_est1();
            case Check::equal1: return check_equal1();
            case Check::prop21: return check_prop21();
            case Check::lemma24: return check_lemma24();
            case Check::sandwich: return check_sandwich();
            case Check::endpoints: return check_endpoints();
            case Check::monotone: return check_monotone();
            case Check::homogeneity: return check_homogeneity();
            case Check::unitary_invariance: return check_unitary();
            case Check::sample_oracle: return check_oracle();
            case Check::kittaneh: return check_kittaneh();
        }
    }

    CheckRecord base(std::string id, std::string theorem, const Params& params) const {
        CheckRecord r;
        r.check_id = std::move(id);
        r.theorem = std::move(theorem);
        r.seed = seed_;
        r.alpha = params.alpha;
        r.p = params.p;
        r.s = params.s;
        r.input = t_;
        return r;
    }

    CheckRecord& push(std::string id, std::string theorem, const Params& params, double lhs, double rhs,
                      bool equality, double tol) {
        CheckRecord r = base(std::move(id), std::move(theorem), params);
        r.lhs = lhs;
        r.rhs = rhs;
        r.relation = equality ? "eq" : "le";
        r.slack = equality ? -std::abs(lhs - rhs) : rhs - lhs;
        r.tolerance = tol;
        r.verdict = (r.slack + tol >= 0.0) ? Verdict::pass : Verdict::fail;
        out_.push_back(std::move(r));
        return out_.back();
    }

    // Bound soundness: reference <= bound under the verdict rule.
    void push_bound(const std::string& id, const BoundReport& b, double value) {
        Params params{b.alpha, b.p, b.s};
        CheckRecord& r = push(id, to_string(b.theorem), params, b.reference, value, false,
                              cfg_.verdict_tol * std::max(1.0, value));
        if (b.reference > 0.0) r.tightness = value / b.reference;
    }

    const AlphaNormResult& norm_at(double alpha) {
        auto it = norms_.find(alpha);
        if (it == norms_.end()) it = norms_.emplace(alpha, alpha_norm(m_, AlphaSpec(alpha))).first;
        return it->second;
    }

    double numrad() {
        if (!w_) w_ = numerical_radius(m_, cfg_.numrad_tol);
        return *w_;
    }

    double opnorm() {
        if (!op_) op_ = operator_norm(m_);
        return *op_;
    }

    BoundOptions bound_options(double reference) const {
        BoundOptions o;
        o.builder.numrad_tol = cfg_.numrad_tol;
        o.reference = reference;
        return o;
    }

    double bound_alpha() const { return stream_uniform(seed_, kBoundAlpha); }

    double eps(const AlphaNormResult& r) const { return 2.0 * (gap(r) + cfg_.numrad_tol); }

    void check_est6() {
        const double a = bound_alpha();
        const BoundReport b = bound_est6(*t_, AlphaSpec(a), bound_options(norm_at(a).value));
        push_bound("est6", b, b.value - cfg_.inject_bound_offset);
    }

    void check_family(Theorem th) {
        const double a = bound_alpha();
        const BoundOptions o = bound_options(norm_at(a).value);
        if (th == Theorem::est8) {
            const auto fg = SymbolFunctionPair::power(0.5);
            for (double p : cfg_.p_values) {
                const BoundReport b = bound_est8(*t_, AlphaSpec(a), fg, p, o);
                push_bound("est8", b, b.value - cfg_.inject_bound_offset);
            }
            return;
        }
        for (double s : cfg_.s_values) {
            const auto fg = SymbolFunctionPair::power(s);
            const BoundReport b = th == Theorem::est7 ? bound_est7(*t_, AlphaSpec(a), fg, o)
                                                       : bound_est9(*t_, AlphaSpec(a), fg, o);
            push_bound(to_string(th), b, b.value - cfg_.inject_bound_offset);
        }
    }

    void check_cor_w(CorollaryBuilder builder, const std::string& id) {
        const auto fg = SymbolFunctionPair::power(0.5);
        const BoundReport b = corollary_w_bound(*t_, builder, fg, bound_options(numrad()));
        push_bound(id, b, b.value);
        const Params params{b.alpha, std::nullopt, b.s};
        push(id + "_cap", "cor_w", params, b.value, *b.cap, false, cfg_.verdict_tol * std::max(1.0, *b.cap));

        BuilderOptions bo;
        bo.numrad_tol = cfg_.numrad_tol;
        const AuxMatrix tilde = builder == CorollaryBuilder::est6   ? build_Ttilde_est6(*t_, bo)
                                : builder == CorollaryBuilder::est7 ? build_Ttilde_est7(*t_, fg, bo)
                                                                    : build_Ttilde_diag(*t_, fg, bo);
        const RealMatrix re = 0.5 * (tilde + tilde.transpose());
        const double re_norm = operator_norm(re.cast<Complex>());
        push(id + "_lemma24", "lemma24", params, *b.cap, re_norm, true, cfg_.numrad_tol * std::max(1.0, re_norm));
    }

    void check_cor_opnorm() {
        BoundOptions o;
        o.builder.numrad_tol = cfg_.numrad_tol;
        o.reference = opnorm();
        const BoundReport b = corollary_opnorm_bound(*t_, o);
        push_bound("cor_opnorm", b, b.value);
        push("cor_opnorm_cap", "cor_opnorm", {b.alpha, {}, {}}, b.value, *b.cap, false,
             cfg_.verdict_tol * std::max(1.0, *b.cap));
    }

    void check_est1() {
        if (t_->n() < 2 || !t_->square_diagonal()) throw DimensionError("est1 needs two square diagonal blocks");
        const ComplexMatrix& x = t_->block(0, 0);
        const ComplexMatrix& y = t_->block(1, 1);
        const double a = stream_uniform(seed_, kDiagAlpha);
        ComplexMatrix d = ComplexMatrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
        d.topLeftCorner(x.rows(), x.cols()) = x;
        d.bottomRightCorner(y.rows(), y.cols()) = y;
        const AlphaNormResult exact = alpha_norm(d, AlphaSpec(a));
        const DiagBlockBounds bb = diag_block_bounds(x, y, AlphaSpec(a));
        const double e = eps(exact) + 1e-8 * std::max(1.0, exact.value);
        const Params params{a, {}, {}};
        push("est1_lower", "est1_i", params, bb.lower, exact.value, false, e);
        const std::pair<const char*, double> uppers[] = {
            {"est1_i", bb.upper_i}, {"est1_ii", bb.upper_ii}, {"est1_iii", bb.upper_iii}};
        for (const auto& [id, u] : uppers) {
            CheckRecord& r = push(id, id, params, exact.value, u, false, e);
            if (exact.value > 0.0) r.tightness = u / exact.value;
        }
        push("est1_sqrt2", "est1_i", params, bb.upper_i, std::numbers::sqrt2 * bb.lower, false, e);
    }

    void check_equal1() {
        if (t_->n() < 2) throw DimensionError("equal1 needs at least two blocks");
        const ComplexMatrix& x = t_->block(0, 1);
        Rng rng(derive_seed(seed_, kNilpotentAlpha));
        const double a = rng.uniform_int(1, 9) / 10.0;
        ComplexMatrix nil = ComplexMatrix::Zero(x.rows() + x.cols(), x.rows() + x.cols());
        nil.topRightCorner(x.rows(), x.cols()) = x;
        const AlphaNormResult r = alpha_norm(nil, AlphaSpec(a));
        const double exact = exact_nilpotent_alpha_norm(x, AlphaSpec(a));
        push("equal1", "equal1", {a, {}, {}}, r.value, exact, true, gap(r) + 1e-5 * std::max(1.0, exact));
    }

    void check_prop21() {
        if (t_->n() < 2 || t_->row_dims()[0] != t_->row_dims()[1] || !t_->square_diagonal()) {
            throw DimensionError("prop21 needs two equal square diagonal blocks");
        }
        const ComplexMatrix& a = t_->block(0, 0);
        const ComplexMatrix& b = t_->block(1, 1);
        const ComplexMatrix z = ComplexMatrix::Zero(a.rows(), a.cols());
        const double alpha = stream_uniform(seed_, kPropAlpha);
        const AlphaSpec spec(alpha);
        const Params params{alpha, {}, {}};
        const auto compare = [&](const char* id, const ComplexMatrix& l, const ComplexMatrix& r) {
            const AlphaNormResult nl = alpha_norm(l, spec);
            const AlphaNormResult nr = alpha_norm(r, spec);
            push(id, "prop21", params, nl.value, nr.value, true, 2.0 * std::max(gap(nl), gap(nr)) + 1e-8);
        };
        const ComplexMatrix off = block2(z, a, b, z);
        for (double theta : {std::numbers::pi / 7.0, std::numbers::pi / 2.0, 1.0}) {
            compare("prop21_a", block2(z, a, std::polar(1.0, theta) * b, z), off);
        }
        compare("prop21_b", off, block2(z, b, a, z));
        compare("prop21_c", block2(a, z, z, b), block2(b, z, z, a));
        compare("prop21_d", block2(a, b, b, a), block2(a - b, z, z, a + b));
    }

    void check_lemma24() {
        if ((m_.imag().array() != 0.0).any() || (m_.real().array() < 0.0).any()) {
            throw ShapeError("lemma24 needs an entrywise nonnegative matrix");
        }
        const ComplexMatrix re = hermitian_parts(m_).first;
        const double w = numrad();
        const double tol = cfg_.numrad_tol * std::max(1.0, w);
        push("lemma24", "lemma24", {}, w, lambda_max(re), true, tol);
        push("lemma24_specrad", "lemma24", {}, w, spectral_radius(re), true, tol);
    }

    void check_sandwich() {
        const double w = numrad();
        const double op = opnorm();
        for (double a : alpha_grid()) {
            const AlphaNormResult& r = norm_at(a);
            const double e = eps(r) + 1e-12 * std::max(1.0, op);
            const Params params{a, {}, {}};
            push("sandwich_w_lower", "sandwich", params, w, r.value, false, e);
            push("sandwich_w_upper", "sandwich", params, r.value, std::sqrt(4.0 - 3.0 * a) * w, false, e);
            push("sandwich_op_lower", "sandwich", params, std::max(0.5, std::sqrt(1.0 - a)) * op, r.value, false, e);
            push("sandwich_op_upper", "sandwich", params, r.value, op, false, e);
        }
    }

    void check_endpoints() {
        const double op = opnorm();
        push("endpoint_alpha0", "endpoints", {0.0, {}, {}}, norm_at(0.0).value, op, true,
             cfg_.verdict_tol * std::max(1.0, op));
        AlphaNormOptions o;
        o.endpoint_shortcuts = false;
        const AlphaNormResult r = alpha_norm(m_, AlphaSpec(1.0), o);
        const double w = numrad();
        push("endpoint_alpha1", "endpoints", {1.0, {}, {}}, r.value, w, true,
             gap(r) + cfg_.numrad_tol + cfg_.verdict_tol * std::max(1.0, w));
    }

    void check_monotone() {
        const std::vector<double> grid = alpha_grid();
        for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
            const AlphaNormResult& lo = norm_at(grid[k]);
            const AlphaNormResult& hi = norm_at(grid[k + 1]);
            push("monotone", "monotone", {grid[k + 1], {}, {}}, hi.value, lo.value, false,
                 gap(lo) + gap(hi) + cfg_.verdict_tol * std::max(1.0, lo.value));
        }
    }

    void check_homogeneity() {
        Rng rng(derive_seed(seed_, kScalar));
        const Complex c = 2.0 * rng.complex_normal();
        const double a = bound_alpha();
        const AlphaNormResult& base = norm_at(a);
        const AlphaNormResult scaled = alpha_norm(c * m_, AlphaSpec(a));
        const double rhs = std::abs(c) * base.value;
        push("homogeneity", "homogeneity", {a, {}, {}}, scaled.value, rhs, true,
             gap(scaled) + std::abs(c) * gap(base) + cfg_.verdict_tol * std::max(1.0, rhs));
    }

    void check_unitary() {
        Rng rng(derive_seed(seed_, kUnitary));
        const ComplexMatrix u = haar_unitary(m_.rows(), rng);
        const double a = bound_alpha();
        const AlphaNormResult& base = norm_at(a);
        const AlphaNormResult rotated = alpha_norm(u.adjoint() * m_ * u, AlphaSpec(a));
        push("unitary_invariance", "unitary_invariance", {a, {}, {}}, rotated.value, base.value, true,
             gap(rotated) + gap(base) + cfg_.verdict_tol * std::max(1.0, base.value));
    }

    void check_oracle() {
        const double a = bound_alpha();
        const double sampled = alpha_norm_sample(m_, AlphaSpec(a), cfg_.oracle_trials, derive_seed(seed_, kOracle));
        push("sample_oracle", "alpha_norm", {a, {}, {}}, sampled, norm_at(a).upper, false, 0.0);
    }

    // Keeps the sample with the smallest relative margin.
    struct Worst {
        double lhs = 0.0, rhs = 0.0, margin = INFINITY;
        void offer(double l, double r, double tol) {
            const double m = (r - l) / (tol * std::max(1.0, r));
            if (m < margin) {
                lhs = l;
                rhs = r;
                margin = m;
            }
        }
    };

    void push_worst(const char* id, const Params& params, const Worst& w) {
        push(id, "kittaneh", params, w.lhs, w.rhs, false, cfg_.lemma_tol * std::max(1.0, w.rhs));
    }

    void check_kittaneh() {
        Rng rng(derive_seed(seed_, kLemma));
        const Eigen::Index n = m_.rows();
        std::vector<ComplexVector> xs, ys;
        for (std::size_t k = 0; k < cfg_.lemma_samples; ++k) {
            xs.push_back(random_unit_vector(n, rng));
            ys.push_back(random_unit_vector(n, rng));
        }
        const double tol = cfg_.lemma_tol;

        const ComplexMatrix h = hermitian_parts(m_).first;
        const ComplexMatrix abs_h = matrix_abs(h);
        Worst sa;
        for (const auto& x : xs) sa.offer(std::abs(x.dot(h * x)), x.dot(abs_h * x).real(), tol);
        push_worst("kittaneh_selfadjoint", {}, sa);

        const ComplexMatrix gram = m_.adjoint() * m_;
        for (double p : cfg_.p_values) {
            const ComplexMatrix gp = spectral_apply([p](double t) { return std::pow(t, p); }, gram);
            Worst pw;
            for (const auto& x : xs) {
                pw.offer(std::pow(std::max(0.0, x.dot(gram * x).real()), p), x.dot(gp * x).real(), tol);
            }
            push_worst("kittaneh_power", {{}, p, {}}, pw);
        }

        const ComplexMatrix abs_m = matrix_abs(m_);
        const ComplexMatrix abs_adj = matrix_abs(m_.adjoint());
        for (double s : cfg_.s_values) {
            const ComplexMatrix f = spectral_apply([s](double t) { return std::pow(t, s); }, abs_m);
            const ComplexMatrix g = spectral_apply([s](double t) { return std::pow(t, 1.0 - s); }, abs_adj);
            Worst mw;
            for (std::size_t k = 0; k < xs.size(); ++k) {
                // <Mx, y> = y* M x
                mw.offer(std::abs(ys[k].dot(m_ * xs[k])), (f * xs[k]).norm() * (g * ys[k]).norm(), tol);
            }
            push_worst("kittaneh_mixed", {{}, {}, s}, mw);
        }
    }

    const SuiteConfig& cfg_;
    std::shared_ptr<const BlockMatrix> t_;
    ComplexMatrix m_;
    std::uint64_t seed_;
    std::map<double, AlphaNormResult> norms_;
    std::optional<double> w_, op_;
    std::vector<CheckRecord> out_;
};

unsigned thread_count(const SuiteConfig& cfg) {
    unsigned n = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ALPHA_NORM_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

SuitePlan plan(EnsembleKind kind, int n_blocks, int dim_min, int dim_max, std::size_t trials, std::uint64_t seed,
               std::vector<Check> checks, bool equal_dims = false) {
    EnsembleSpec e;
    e.kind = kind;
    e.n_blocks = n_blocks;
    e.dim_min = dim_min;
    e.dim_max = dim_max;
    e.trials = trials;
    e.seed = seed;
    e.equal_dims = equal_dims;
    return {e, std::move(checks)};
}

}  // namespace

std::string to_string(EnsembleKind k) {
    for (const auto& [kind, name] : kKindNames)
        if (kind == k) return name;
    return "unknown";
}

EnsembleKind ensemble_from_string(const std::string& s) {
    for (const auto& [kind, name] : kKindNames)
        if (s == name) return kind;
    throw DomainError("unknown ensemble kind '" + s + "'");
}

const std::vector<EnsembleKind>& all_ensemble_kinds() {
    static const std::vector<EnsembleKind> kinds = [] {
        std::vector<EnsembleKind> v;
        for (const auto& [kind, name] : kKindNames) v.push_back(kind);
        return v;
    }();
    return kinds;
}

void validate(const EnsembleSpec& spec) {
    if (spec.n_blocks < 1 || spec.n_blocks > 4) throw DomainError("n_blocks must lie in 1..4");
    if (spec.dim_min < 1 || spec.dim_max > 6 || spec.dim_min > spec.dim_max) {
        throw DomainError("block dimensions must satisfy 1 <= dim_min <= dim_max <= 6");
    }
}

BlockMatrix generate(const EnsembleSpec& spec, std::size_t trial) {
    return generate_from_seed(spec, derive_seed(spec.seed, trial));
}

BlockMatrix generate_from_seed(const EnsembleSpec& spec, std::uint64_t trial_seed) {
    validate(spec);
    Rng rng(trial_seed);
    const auto n = static_cast<std::size_t>(spec.n_blocks);
    std::vector<Eigen::Index> dims(n);
    const int shared = rng.uniform_int(spec.dim_min, spec.dim_max);
    for (auto& d : dims) d = spec.equal_dims ? shared : rng.uniform_int(spec.dim_min, spec.dim_max);

    BlockMatrix t = BlockMatrix::zeros(dims, dims);
    switch (spec.kind) {
        case EnsembleKind::ginibre:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) t.set_block(i, j, ginibre(dims[i], dims[j], rng));
            break;
        case EnsembleKind::hermitian:
            for (std::size_t i = 0; i < n; ++i) {
                const ComplexMatrix g = ginibre(dims[i], dims[i], rng);
                t.set_block(i, i, 0.5 * (g + g.adjoint()));
                for (std::size_t j = i + 1; j < n; ++j) {
                    const ComplexMatrix b = ginibre(dims[i], dims[j], rng);
                    t.set_block(i, j, b);
                    t.set_block(j, i, b.adjoint());
                }
            }
            break;
        case EnsembleKind::unitary: {
            Eigen::Index total = 0;
            for (auto d : dims) total += d;
            t = BlockMatrix::split(haar_unitary(total, rng), dims, dims);
            break;
        }
        case EnsembleKind::nilpotent_upper:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) t.set_block(i, j, ginibre(dims[i], dims[j], rng));
            break;
        case EnsembleKind::entrywise_nonneg:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    t.set_block(i, j, ginibre(dims[i], dims[j], rng).real().cwiseAbs().cast<Complex>());
            break;
        case EnsembleKind::diag_blocks:
            for (std::size_t i = 0; i < n; ++i) t.set_block(i, i, ginibre(dims[i], dims[i], rng));
            break;
    }
    return t;
}

std::string to_string(Check c) {
    switch (c) {
        case Check::est6: return "est6";
        case Check::est7: return "est7";
        case Check::est8: return "est8";
        case Check::est9: return "est9";
        case Check::cor_w_est6: return "cor_w_est6";
        case Check::cor_w_est7: return "cor_w_est7";
        case Check::cor_w_est9: return "cor_w_est9";
        case Check::cor_opnorm: return "cor_opnorm";
        case Check::est1: return "est1";
        case Check::equal1: return "equal1";
        case Check::prop21: return "prop21";
        case Check::lemma24: return "lemma24";
        case Check::sandwich: return "sandwich";
        case Check::endpoints: return "endpoints";
        case Check::monotone: return "monotone";
        case Check::homogeneity: return "homogeneity";
        case Check::unitary_invariance: return "unitary_invariance";
        case Check::sample_oracle: return "sample_oracle";
        case Check::kittaneh: return "kittaneh";
    }
    return "unknown";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::error: return "error";
    }
    return "unknown";
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all", "est6", "est7", "est8", "est9",
                                                "prop21", "equal1", "est1", "lemmas"};
    return names;
}

SuiteConfig default_suite(const std::string& name, std::size_t trials, std::uint64_t seed) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
        throw DomainError("unknown suite '" + name + "'");
    }
    if (trials < 1) throw DomainError("trials must be >= 1");
    const bool all = name == "all";
    SuiteConfig cfg;
    std::uint64_t plan_index = 0;
    const auto next_seed = [&] { return derive_seed(seed, plan_index++); };

    std::vector<Check> bound_checks;
    if (all || name == "est6") bound_checks.insert(bound_checks.end(), {Check::est6, Check::cor_w_est6, Check::cor_opnorm});
    if (all || name == "est7") bound_checks.insert(bound_checks.end(), {Check::est7, Check::cor_w_est7});
    if (all || name == "est8") bound_checks.push_back(Check::est8);
    if (all || name == "est9") bound_checks.insert(bound_checks.end(), {Check::est9, Check::cor_w_est9});
    if (!bound_checks.empty()) {
        for (EnsembleKind kind : all_ensemble_kinds())
            for (int n : {2, 3}) cfg.plans.push_back(plan(kind, n, 1, 4, trials, next_seed(), bound_checks));
    }
    if (all || name == "prop21") {
        cfg.plans.push_back(plan(EnsembleKind::ginibre, 2, 2, 3, trials, next_seed(), {Check::prop21}, true));
    }
    if (all || name == "equal1") {
        cfg.plans.push_back(plan(EnsembleKind::nilpotent_upper, 2, 1, 5, trials, next_seed(), {Check::equal1}));
    }
    if (all || name == "est1") {
        cfg.plans.push_back(plan(EnsembleKind::diag_blocks, 2, 1, 4, trials, next_seed(), {Check::est1}));
    }
    if (all || name == "lemmas") {
        cfg.plans.push_back(
            plan(EnsembleKind::entrywise_nonneg, 2, 1, 4, trials, next_seed(), {Check::lemma24, Check::kittaneh}));
        const std::vector<Check> props{Check::sandwich,    Check::endpoints,          Check::monotone,
                                       Check::homogeneity, Check::unitary_invariance, Check::sample_oracle,
                                       Check::kittaneh};
        for (EnsembleKind kind : {EnsembleKind::ginibre, EnsembleKind::nilpotent_upper, EnsembleKind::hermitian}) {
            cfg.plans.push_back(plan(kind, 2, 1, 4, trials, next_seed(), props));
        }
    }
    return cfg;
}

std::vector<CheckRecord> run_trial(const SuiteConfig& config, const SuitePlan& plan, std::size_t trial) {
    const std::uint64_t seed = derive_seed(plan.ensemble.seed, trial);
    auto input = std::make_shared<const BlockMatrix>(generate_from_seed(plan.ensemble, seed));
    Trial t(config, std::move(input), seed);
    for (Check c : plan.checks) t.run(c);
    return t.take();
}

SuiteReport run_suite(const SuiteConfig& config) {
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t p = 0; p < config.plans.size(); ++p) {
        validate(config.plans[p].ensemble);
        for (std::size_t i = 0; i < config.plans[p].ensemble.trials; ++i) jobs.emplace_back(p, i);
    }

    std::vector<std::vector<CheckRecord>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            results[k] = run_trial(config, config.plans[jobs[k].first], jobs[k].second);
        }
    };
    const unsigned n_threads = std::min<std::size_t>(thread_count(config), std::max<std::size_t>(1, jobs.size()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    }

    SuiteReport report;
    for (auto& r : results)
        for (auto& rec : r) report.records.push_back(std::move(rec));
    report.summary = summarize(report.records);
    return report;
}

SuiteSummary summarize(const std::vector<CheckRecord>& records) {
    SuiteSummary s;
    std::map<std::string, std::pair<double, std::size_t>> tight;
    double worst_margin = INFINITY;
    for (const CheckRecord& r : records) {
        ++s.total;
        switch (r.verdict) {
            case Verdict::pass: ++s.passed; break;
            case Verdict::fail: ++s.failed; break;
            case Verdict::error: ++s.errors; break;
        }
        if (r.verdict == Verdict::error) {
            if (!s.worst || worst_margin > -INFINITY) {
                worst_margin = -INFINITY;
                s.worst = r;
            }
            continue;
        }
        if (!s.min_slack || r.slack < *s.min_slack) s.min_slack = r.slack;
        const double margin = r.slack + r.tolerance;
        if (margin < worst_margin) {
            worst_margin = margin;
            s.worst = r;
        }
        if (r.tightness) {
            auto& [sum, count] = tight[r.theorem];
            sum += *r.tightness;
            ++count;
        }
    }
    for (const auto& [th, acc] : tight) s.mean_tightness[th] = acc.first / static_cast<double>(acc.second);
    return s;
}

}  // namespace alphanorm
