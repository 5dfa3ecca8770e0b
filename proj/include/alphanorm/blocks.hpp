#pragma once

// Block operator matrices T = (T_ij) and the small nonnegative n x n matrices
// (R, S, T~) assembled from block-level norms, numerical radii and
// function-of-singular-value terms.

#include <cstddef>
#include <string>
#include <vector>

#include "alphanorm/linalg.hpp"
#include "alphanorm/norms.hpp"

namespace alphanorm {

class BlockMatrix {
public:
    // blocks are row-major: blocks[i * n + j] has shape row_dims[i] x col_dims[j].
    BlockMatrix(std::vector<Eigen::Index> row_dims, std::vector<Eigen::Index> col_dims,
                std::vector<ComplexMatrix> blocks);

    static BlockMatrix zeros(std::vector<Eigen::Index> row_dims, std::vector<Eigen::Index> col_dims);
    // Inverse of assemble for the given partition.
    static BlockMatrix split(const ComplexMatrix& m, std::vector<Eigen::Index> row_dims,
                             std::vector<Eigen::Index> col_dims);

    std::size_t n() const { return row_dims_.size(); }
    const std::vector<Eigen::Index>& row_dims() const { return row_dims_; }
    const std::vector<Eigen::Index>& col_dims() const { return col_dims_; }
    const ComplexMatrix& block(std::size_t i, std::size_t j) const { return blocks_[i * n() + j]; }
    void set_block(std::size_t i, std::size_t j, ComplexMatrix b);

    bool square_diagonal() const;
    // Every block acts on the same space (row_dims = col_dims = constant).
    bool uniform() const;

private:
    std::vector<Eigen::Index> row_dims_, col_dims_;
    std::vector<ComplexMatrix> blocks_;
};

bool operator==(const BlockMatrix& a, const BlockMatrix& b);

ComplexMatrix assemble(const BlockMatrix& t);

// Nonnegative functions f, g on [0, inf) with f(t) g(t) = t.
class SymbolFunctionPair {
public:
    // f(t) = t^s, g(t) = t^(1-s), s in [0,1].
    static SymbolFunctionPair power(double s);
    // Validated on 1000 points of [0,10]: |f g - t| <= 1e-9 max(1,t), f, g >= 0.
    static SymbolFunctionPair tabulated(ScalarFunction f, ScalarFunction g, std::string label);

    bool is_power() const { return power_; }
    double exponent() const;
    const std::string& label() const { return label_; }
    double f(double t) const { return f_(t); }
    double g(double t) const { return g_(t); }

    // ||f^2(|A|)||^{1/2}
    double f_abs_norm(const ComplexMatrix& a) const;
    // ||g^2(|A*|)||^{1/2}
    double g_abs_adjoint_norm(const ComplexMatrix& a) const;
    // ||f^2(|A|)||^{1/2} ||g^2(|A*|)||^{1/2}
    double mixed_term(const ComplexMatrix& a) const { return f_abs_norm(a) * g_abs_adjoint_norm(a); }
    // ||f^2(|A|) + g^2(|A*|)|| for square A.
    double diagonal_term(const ComplexMatrix& a) const;

private:
    SymbolFunctionPair(bool power, double s, ScalarFunction f, ScalarFunction g, std::string label);

    bool power_;
    double s_;
    ScalarFunction f_, g_;
    std::string label_;
};

// Houses R, S and T~. Entries are nonnegative.
using AuxMatrix = RealMatrix;

struct BuilderOptions {
    // Enforce the equal-dimension hypothesis T_ij in B(H) for the f,g builders.
    bool strict = false;
    double numrad_tol = kDefaultNumradTol;
};

AuxMatrix build_S(const BlockMatrix& t);
AuxMatrix build_R_est6(const BlockMatrix& t, const BuilderOptions& opts = {});
AuxMatrix build_Ttilde_est6(const BlockMatrix& t, const BuilderOptions& opts = {});
AuxMatrix build_R_est7(const BlockMatrix& t, const SymbolFunctionPair& fg, const BuilderOptions& opts = {});
AuxMatrix build_Ttilde_est7(const BlockMatrix& t, const SymbolFunctionPair& fg, const BuilderOptions& opts = {});
// Shared by the p-power bound and its p = 1 case.
AuxMatrix build_R_diag(const BlockMatrix& t, const SymbolFunctionPair& fg, const BuilderOptions& opts = {});
AuxMatrix build_Ttilde_diag(const BlockMatrix& t, const SymbolFunctionPair& fg, const BuilderOptions& opts = {});

}  // namespace alphanorm
