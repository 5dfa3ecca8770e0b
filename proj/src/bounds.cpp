#include "alphanorm/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "alphanorm/errors.hpp"

namespace alphanorm {

namespace {

constexpr std::array<std::pair<Theorem, const char*>, 9> kTheoremNames{{
    {Theorem::est1_i, "est1_i"},
    {Theorem::est1_ii, "est1_ii"},
    {Theorem::est1_iii, "est1_iii"},
    {Theorem::est6, "est6"},
    {Theorem::est7, "est7"},
    {Theorem::est8, "est8"},
    {Theorem::est9, "est9"},
    {Theorem::cor_w, "cor_w"},
    {Theorem::cor_opnorm, "cor_opnorm"},
}};

// (X^T X)^p for a real square X.
RealMatrix gram_power(const AuxMatrix& x, double p) {
    const RealMatrix gram = x.transpose() * x;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
    RealVector lam = es.eigenvalues();
    for (Eigen::Index k = 0; k < lam.size(); ++k) lam(k) = std::pow(std::max(lam(k), 0.0), p);
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

double combined_from_powers(const RealMatrix& r_pow, const RealMatrix& s_pow, double alpha) {
    RealMatrix c = alpha * r_pow + (1.0 - alpha) * s_pow;
    c = 0.5 * (c + c.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(c, Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues()(c.rows() - 1));
}

void check_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must be >= 1");
}

void check_pair(const AuxMatrix& r, const AuxMatrix& s) {
    if (r.rows() != r.cols() || s.rows() != s.cols() || r.rows() != s.rows()) {
        throw DimensionError("combined_norm: R and S must be square and of equal size");
    }
}

// Precomputed |R|^{2p}, |S|^{2p} so that alpha sweeps only cost one small eigensolve.
struct CombinedFamily {
    RealMatrix r_pow, s_pow;
    double p;

    CombinedFamily(const AuxMatrix& r, const AuxMatrix& s, double p_) : p(p_) {
        check_pair(r, s);
        check_p(p);
        r_pow = gram_power(r, p);
        s_pow = gram_power(s, p);
    }

    double operator()(double alpha) const { return combined_from_powers(r_pow, s_pow, alpha); }
    // Bound on ||T||_alpha: combined^{1/(2p)}.
    double bound(double alpha) const { return std::pow((*this)(alpha), 1.0 / (2.0 * p)); }
};

double reference_alpha_norm(const BlockMatrix& t, AlphaSpec a, const BoundOptions& opts) {
    if (opts.reference) return *opts.reference;
    AlphaNormOptions solver;
    solver.width = opts.width;
    return alpha_norm(assemble(t), a, solver).value;
}

BoundReport make_report(Theorem th, double value, double alpha, double reference) {
    BoundReport r;
    r.theorem = th;
    r.value = value;
    r.alpha = alpha;
    r.reference = reference;
    if (reference > 0.0) r.tightness = value / reference;
    return r;
}

std::optional<double> exponent_of(const SymbolFunctionPair& fg) {
    if (fg.is_power()) return fg.exponent();
    return std::nullopt;
}

struct AuxPair {
    AuxMatrix r, s;
};

AuxPair aux_for(const BlockMatrix& t, Theorem th, const SymbolFunctionPair& fg, const BuilderOptions& b) {
    switch (th) {
        case Theorem::est6:
            return {build_R_est6(t, b), build_S(t)};
        case Theorem::est7:
            return {build_R_est7(t, fg, b), build_S(t)};
        case Theorem::est8:
        case Theorem::est9:
            return {build_R_diag(t, fg, b), build_S(t)};
        default:
            throw DomainError("theorem " + to_string(th) + " has no (R, S) pair");
    }
}

BoundReport family_bound(const BlockMatrix& t, Theorem th, AlphaSpec a, const SymbolFunctionPair& fg, double p,
                         const BoundOptions& opts) {
    check_p(p);
    const AuxPair aux = aux_for(t, th, fg, opts.builder);
    const CombinedFamily family(aux.r, aux.s, p);
    BoundReport r = make_report(th, family.bound(a.value()), a.value(), reference_alpha_norm(t, a, opts));
    if (th == Theorem::est8) r.p = p;
    if (th != Theorem::est6) r.s = exponent_of(fg);
    return r;
}

double ternary(const std::function<double(double)>& phi, double lo, double hi) {
    while (hi - lo > kAlphaResolution) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (phi(m1) <= phi(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::string to_string(Theorem t) {
    for (const auto& [th, name] : kTheoremNames)
        if (th == t) return name;
    return "unknown";
}

Theorem theorem_from_string(const std::string& s) {
    for (const auto& [th, name] : kTheoremNames)
        if (s == name) return th;
    throw DomainError("unknown theorem '" + s + "'");
}

bool holds(double lhs, double rhs, double tol) { return rhs - lhs >= -tol * std::max(1.0, rhs); }

double combined_norm(const AuxMatrix& r, const AuxMatrix& s, AlphaSpec a, double p) {
    return CombinedFamily(r, s, p)(a.value());
}

BoundReport bound_est6(const BlockMatrix& t, AlphaSpec a, const BoundOptions& opts) {
    return family_bound(t, Theorem::est6, a, SymbolFunctionPair::power(0.5), 1.0, opts);
}

BoundReport bound_est7(const BlockMatrix& t, AlphaSpec a, const SymbolFunctionPair& fg, const BoundOptions& opts) {
    return family_bound(t, Theorem::est7, a, fg, 1.0, opts);
}

BoundReport bound_est8(const BlockMatrix& t, AlphaSpec a, const SymbolFunctionPair& fg, double p,
                       const BoundOptions& opts) {
    return family_bound(t, Theorem::est8, a, fg, p, opts);
}

BoundReport bound_est9(const BlockMatrix& t, AlphaSpec a, const SymbolFunctionPair& fg, const BoundOptions& opts) {
    return family_bound(t, Theorem::est9, a, fg, 1.0, opts);
}

DiagBlockBounds diag_block_bounds(const ComplexMatrix& x, const ComplexMatrix& y, AlphaSpec a,
                                  const AlphaNormOptions& solver) {
    if (!is_square(x) || !is_square(y)) throw DimensionError("diag_block_bounds: X and Y must be square");
    const double alpha = a.value();
    const double nx = alpha_norm(x, a, solver).value;
    const double ny = alpha_norm(y, a, solver).value;
    const double wx = numerical_radius(x);
    const double wy = numerical_radius(y);
    DiagBlockBounds out;
    out.lower = std::max(nx, ny);
    out.upper_i = std::max(std::sqrt(nx * nx + alpha * wx * wx), std::sqrt(ny * ny + alpha * wy * wy));
    out.upper_ii = std::sqrt(std::max(nx * nx, ny * ny) + alpha * wx * wy);
    out.upper_iii = nx + ny;
    return out;
}

double exact_nilpotent_alpha_norm(const ComplexMatrix& x, AlphaSpec a) {
    const double nx = operator_norm(x);
    const double alpha = a.value();
    if (alpha > 0.5) return nx / (2.0 * std::sqrt(alpha));
    return std::sqrt(1.0 - alpha) * nx;
}

AlphaMinimum minimize_over_alpha(const std::function<double(double)>& phi, MinimizeMode mode) {
    std::map<double, double> seen;
    const auto eval = [&](double alpha) {
        if (auto it = seen.find(alpha); it != seen.end()) return it->second;
        const double v = phi(alpha);
        if (!std::isfinite(v)) throw DomainError("minimize_over_alpha: objective is not finite");
        seen.emplace(alpha, v);
        return v;
    };

    std::vector<double> candidates{0.0};
    if (mode == MinimizeMode::convex_ternary) {
        candidates.push_back(ternary(eval, 0.0, 1.0));
    } else {
        constexpr int kGrid = 101;
        std::vector<std::pair<double, int>> grid;
        for (int k = 0; k < kGrid; ++k) grid.emplace_back(eval(k / 100.0), k);
        std::stable_sort(grid.begin(), grid.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        for (int c = 0; c < 3; ++c) {
            const int k = grid[c].second;
            candidates.push_back(k / 100.0);
            candidates.push_back(ternary(eval, std::max(0, k - 1) / 100.0, std::min(kGrid - 1, k + 1) / 100.0));
        }
    }
    candidates.push_back(1.0);

    AlphaMinimum best{candidates.front(), eval(candidates.front())};
    for (double c : candidates) {
        const double v = eval(c);
        if (v < best.value || (v == best.value && c < best.alpha)) best = {c, v};
    }
    return best;
}

BoundReport minimized_bound(const BlockMatrix& t, Theorem theorem, const SymbolFunctionPair& fg, double p,
                            const BoundOptions& opts) {
    if (theorem != Theorem::est8) p = 1.0;
    check_p(p);
    const AuxPair aux = aux_for(t, theorem, fg, opts.builder);
    const CombinedFamily family(aux.r, aux.s, p);
    // alpha -> combined norm is a largest eigenvalue of an affine family, hence convex.
    const AlphaMinimum m = minimize_over_alpha(family, MinimizeMode::convex_ternary);
    BoundReport r = make_report(theorem, std::pow(m.value, 1.0 / (2.0 * p)), m.alpha,
                                reference_alpha_norm(t, AlphaSpec(m.alpha), opts));
    if (theorem == Theorem::est8) r.p = p;
    if (theorem != Theorem::est6) r.s = exponent_of(fg);
    return r;
}

BoundReport corollary_w_bound(const BlockMatrix& t, CorollaryBuilder builder, const SymbolFunctionPair& fg,
                              const BoundOptions& opts) {
    AuxMatrix tilde;
    switch (builder) {
        case CorollaryBuilder::est6:
            tilde = build_Ttilde_est6(t, opts.builder);
            break;
        case CorollaryBuilder::est7:
            tilde = build_Ttilde_est7(t, fg, opts.builder);
            break;
        case CorollaryBuilder::est9:
            tilde = build_Ttilde_diag(t, fg, opts.builder);
            break;
    }
    const AuxMatrix r = 0.5 * (tilde + tilde.transpose());
    const CombinedFamily family(r, build_S(t), 1.0);
    const AlphaMinimum m = minimize_over_alpha(family, MinimizeMode::convex_ternary);
    const double reference =
        opts.reference ? *opts.reference : numerical_radius(assemble(t), opts.builder.numrad_tol);
    BoundReport out = make_report(Theorem::cor_w, std::sqrt(m.value), m.alpha, reference);
    if (builder != CorollaryBuilder::est6) out.s = exponent_of(fg);
    out.cap = numerical_radius(tilde.cast<Complex>(), opts.builder.numrad_tol);
    return out;
}

BoundReport corollary_opnorm_bound(const BlockMatrix& t, const BoundOptions& opts) {
    const AuxMatrix s = build_S(t);
    const CombinedFamily family(build_R_est6(t, opts.builder), s, 1.0);
    const auto quotient = [&family](double alpha) {
        return std::sqrt(family(alpha)) / std::max(0.5, std::sqrt(1.0 - alpha));
    };
    const AlphaMinimum m = minimize_over_alpha(quotient, MinimizeMode::grid_refine);
    const double reference = opts.reference ? *opts.reference : operator_norm(assemble(t));
    BoundReport out = make_report(Theorem::cor_opnorm, m.value, m.alpha, reference);
    out.cap = operator_norm(s.cast<Complex>());
    return out;
}

}  // namespace alphanorm
