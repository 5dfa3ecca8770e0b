#include "alphanorm/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "alphanorm/errors.hpp"

namespace alphanorm {

namespace {

std::string shape(Eigen::Index r, Eigen::Index c) { return std::to_string(r) + "x" + std::to_string(c); }

Eigen::Index total(const std::vector<Eigen::Index>& dims) {
    return std::accumulate(dims.begin(), dims.end(), Eigen::Index{0});
}

void check_partition(const std::vector<Eigen::Index>& row_dims, const std::vector<Eigen::Index>& col_dims) {
    if (row_dims.empty()) throw DimensionError("block matrix needs at least one block");
    if (row_dims.size() != col_dims.size()) {
        throw DimensionError("block matrix must have as many block rows as block columns");
    }
    const auto bad = [](Eigen::Index d) { return d < 1; };
    if (std::any_of(row_dims.begin(), row_dims.end(), bad) || std::any_of(col_dims.begin(), col_dims.end(), bad)) {
        throw DimensionError("block dimensions must be positive");
    }
}

void require_square_diagonal(const BlockMatrix& t, const char* what) {
    if (!t.square_diagonal()) throw DimensionError(std::string(what) + ": diagonal blocks must be square");
}

void require_uniform(const BlockMatrix& t, const BuilderOptions& opts, const char* what) {
    if (opts.strict && !t.uniform()) {
        throw DimensionError(std::string(what) + ": strict mode requires all blocks to act on one space");
    }
}

// Largest value of phi over the eigenvalues of |A| (cols of them) or |A*| (rows).
double max_over_abs_spectrum(const ComplexMatrix& a, bool adjoint, const ScalarFunction& phi) {
    const RealVector sv = singular_values(a);
    const Eigen::Index dim = adjoint ? a.rows() : a.cols();
    double best = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) best = std::max(best, phi(sv(k)));
    if (dim > sv.size()) best = std::max(best, phi(0.0));
    return best;
}

}  // namespace

BlockMatrix::BlockMatrix(std::vector<Eigen::Index> row_dims, std::vector<Eigen::Index> col_dims,
                         std::vector<ComplexMatrix> blocks)
    : row_dims_(std::move(row_dims)), col_dims_(std::move(col_dims)), blocks_(std::move(blocks)) {
    check_partition(row_dims_, col_dims_);
    if (blocks_.size() != n() * n()) {
        throw DimensionError("expected " + std::to_string(n() * n()) + " blocks, got " +
                             std::to_string(blocks_.size()));
    }
    for (std::size_t i = 0; i < n(); ++i) {
        for (std::size_t j = 0; j < n(); ++j) {
            const ComplexMatrix& b = block(i, j);
            if (b.rows() != row_dims_[i] || b.cols() != col_dims_[j]) {
                throw DimensionError("block (" + std::to_string(i) + "," + std::to_string(j) + ") has shape " +
                                     shape(b.rows(), b.cols()) + ", partition requires " +
                                     shape(row_dims_[i], col_dims_[j]));
            }
            validate(b);
        }
    }
}

BlockMatrix BlockMatrix::zeros(std::vector<Eigen::Index> row_dims, std::vector<Eigen::Index> col_dims) {
    check_partition(row_dims, col_dims);
    std::vector<ComplexMatrix> blocks;
    for (Eigen::Index r : row_dims)
        for (Eigen::Index c : col_dims) blocks.push_back(ComplexMatrix::Zero(r, c));
    return BlockMatrix(std::move(row_dims), std::move(col_dims), std::move(blocks));
}

BlockMatrix BlockMatrix::split(const ComplexMatrix& m, std::vector<Eigen::Index> row_dims,
                               std::vector<Eigen::Index> col_dims) {
    check_partition(row_dims, col_dims);
    if (m.rows() != total(row_dims) || m.cols() != total(col_dims)) {
        throw DimensionError("split: matrix shape " + shape(m.rows(), m.cols()) + " does not match partition");
    }
    std::vector<ComplexMatrix> blocks;
    Eigen::Index r0 = 0;
    for (Eigen::Index r : row_dims) {
        Eigen::Index c0 = 0;
        for (Eigen::Index c : col_dims) {
            blocks.push_back(m.block(r0, c0, r, c));
            c0 += c;
        }
        r0 += r;
    }
    return BlockMatrix(std::move(row_dims), std::move(col_dims), std::move(blocks));
}

void BlockMatrix::set_block(std::size_t i, std::size_t j, ComplexMatrix b) {
    if (i >= n() || j >= n()) throw DimensionError("set_block: index out of range");
    if (b.rows() != row_dims_[i] || b.cols() != col_dims_[j]) {
        throw DimensionError("set_block: shape " + shape(b.rows(), b.cols()) + " does not match partition");
    }
    validate(b);
    blocks_[i * n() + j] = std::move(b);
}

bool BlockMatrix::square_diagonal() const {
    for (std::size_t i = 0; i < n(); ++i)
        if (row_dims_[i] != col_dims_[i]) return false;
    return true;
}

bool BlockMatrix::uniform() const {
    const Eigen::Index d = row_dims_.front();
    const auto same = [d](Eigen::Index x) { return x == d; };
    return std::all_of(row_dims_.begin(), row_dims_.end(), same) &&
           std::all_of(col_dims_.begin(), col_dims_.end(), same);
}

bool operator==(const BlockMatrix& a, const BlockMatrix& b) {
    if (a.row_dims() != b.row_dims() || a.col_dims() != b.col_dims()) return false;
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t j = 0; j < a.n(); ++j)
            if (a.block(i, j) != b.block(i, j)) return false;
    return true;
}

ComplexMatrix assemble(const BlockMatrix& t) {
    ComplexMatrix out(total(t.row_dims()), total(t.col_dims()));
    Eigen::Index r0 = 0;
    for (std::size_t i = 0; i < t.n(); ++i) {
        Eigen::Index c0 = 0;
        for (std::size_t j = 0; j < t.n(); ++j) {
            out.block(r0, c0, t.row_dims()[i], t.col_dims()[j]) = t.block(i, j);
            c0 += t.col_dims()[j];
        }
        r0 += t.row_dims()[i];
    }
    return out;
}

SymbolFunctionPair::SymbolFunctionPair(bool power, double s, ScalarFunction f, ScalarFunction g, std::string label)
    : power_(power), s_(s), f_(std::move(f)), g_(std::move(g)), label_(std::move(label)) {}

SymbolFunctionPair SymbolFunctionPair::power(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("power symbol: s must lie in [0,1]");
    return SymbolFunctionPair(
        true, s, [s](double t) { return std::pow(t, s); }, [s](double t) { return std::pow(t, 1.0 - s); },
        "power(" + std::to_string(s) + ")");
}

SymbolFunctionPair SymbolFunctionPair::tabulated(ScalarFunction f, ScalarFunction g, std::string label) {
    if (!f || !g) throw DomainError("tabulated symbol: both functions are required");
    constexpr int kSamples = 1000;
    for (int k = 0; k < kSamples; ++k) {
        const double t = 10.0 * k / (kSamples - 1);
        const double ft = f(t), gt = g(t);
        if (!std::isfinite(ft) || !std::isfinite(gt) || ft < 0.0 || gt < 0.0) {
            throw DomainError("tabulated symbol '" + label + "': f and g must be finite and nonnegative");
        }
        if (std::abs(ft * gt - t) > 1e-9 * std::max(1.0, t)) {
            throw DomainError("tabulated symbol '" + label + "': f(t) g(t) != t at t = " + std::to_string(t));
        }
    }
    return SymbolFunctionPair(false, 0.0, std::move(f), std::move(g), std::move(label));
}

double SymbolFunctionPair::exponent() const {
    if (!power_) throw DomainError("symbol '" + label_ + "' is not a power pair");
    return s_;
}

double SymbolFunctionPair::f_abs_norm(const ComplexMatrix& a) const {
    if (power_) return max_over_abs_spectrum(a, false, f_);
    const auto f2 = [this](double t) { return f_(t) * f_(t); };
    return std::sqrt(operator_norm(spectral_apply(f2, matrix_abs(a))));
}

double SymbolFunctionPair::g_abs_adjoint_norm(const ComplexMatrix& a) const {
    if (power_) return max_over_abs_spectrum(a, true, g_);
    const auto g2 = [this](double t) { return g_(t) * g_(t); };
    return std::sqrt(operator_norm(spectral_apply(g2, matrix_abs(a.adjoint()))));
}

double SymbolFunctionPair::diagonal_term(const ComplexMatrix& a) const {
    if (!is_square(a)) throw DimensionError("diagonal_term: block must be square");
    const auto f2 = [this](double t) { return f_(t) * f_(t); };
    const auto g2 = [this](double t) { return g_(t) * g_(t); };
    return operator_norm(spectral_apply(f2, matrix_abs(a)) + spectral_apply(g2, matrix_abs(a.adjoint())));
}

AuxMatrix build_S(const BlockMatrix& t) {
    const auto n = static_cast<Eigen::Index>(t.n());
    AuxMatrix s(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) s(i, j) = operator_norm(t.block(i, j));
    return s;
}

AuxMatrix build_Ttilde_est6(const BlockMatrix& t, const BuilderOptions& opts) {
    require_square_diagonal(t, "build_Ttilde_est6");
    AuxMatrix out = build_S(t);
    for (Eigen::Index i = 0; i < out.rows(); ++i) out(i, i) = numerical_radius(t.block(i, i), opts.numrad_tol);
    return out;
}

AuxMatrix build_R_est6(const BlockMatrix& t, const BuilderOptions& opts) {
    const AuxMatrix tt = build_Ttilde_est6(t, opts);
    return 0.5 * (tt + tt.transpose());
}

AuxMatrix build_Ttilde_est7(const BlockMatrix& t, const SymbolFunctionPair& fg, const BuilderOptions& opts) {
    require_uniform(t, opts, "build_Ttilde_est7");
    const auto n = static_cast<Eigen::Index>(t.n());
    AuxMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = fg.mixed_term(t.block(i, j));
    return out;
}

AuxMatrix build_R_est7(const BlockMatrix& t, const SymbolFunctionPair& fg, const BuilderOptions& opts) {
    const AuxMatrix tt = build_Ttilde_est7(t, fg, opts);
    return 0.5 * (tt + tt.transpose());
}

AuxMatrix build_Ttilde_diag(const BlockMatrix& t, const SymbolFunctionPair& fg, const BuilderOptions& opts) {
    require_square_diagonal(t, "build_R_diag");
    AuxMatrix out = build_Ttilde_est7(t, fg, opts);
    for (Eigen::Index i = 0; i < out.rows(); ++i) out(i, i) = 0.5 * fg.diagonal_term(t.block(i, i));
    return out;
}

AuxMatrix build_R_diag(const BlockMatrix& t, const SymbolFunctionPair& fg, const BuilderOptions& opts) {
    const AuxMatrix tt = build_Ttilde_diag(t, fg, opts);
    return 0.5 * (tt + tt.transpose());
}

}  // namespace alphanorm
