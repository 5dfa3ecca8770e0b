#pragma once

#include <functional>
#include <optional>
#include <string>

#include "alphanorm/blocks.hpp"
#include "alphanorm/norms.hpp"

namespace alphanorm {

enum class Theorem { est1_i, est1_ii, est1_iii, est6, est7, est8, est9, cor_w, cor_opnorm };

std::string to_string(Theorem t);
Theorem theorem_from_string(const std::string& s);

struct BoundReport {
    Theorem theorem = Theorem::est6;
    double value = 0.0;
    double alpha = 0.0;
    std::optional<double> p;
    std::optional<double> s;
    double reference = 0.0;             // the exactly computed quantity being bounded
    std::optional<double> tightness;    // value / reference, absent when reference == 0
    std::optional<double> cap;          // dominating quantity for the corollary chains
};

struct BoundOptions {
    BuilderOptions builder;
    // Enclosure width for the alpha-norm reference; <= 0 selects the solver default.
    double width = 0.0;
    // Skip the reference solve and use this value instead.
    std::optional<double> reference;
};

// Verdict rule for "lhs <= rhs": rhs - lhs >= -tol * max(1, rhs).
inline constexpr double kVerdictTol = 1e-8;
bool holds(double lhs, double rhs, double tol = kVerdictTol);

// ||alpha |R|^{2p} + (1 - alpha) |S|^{2p}|| with |X| = (X^T X)^{1/2}.
double combined_norm(const AuxMatrix& r, const AuxMatrix& s, AlphaSpec a, double p);

BoundReport bound_est6(const BlockMatrix& t, AlphaSpec a, const BoundOptions& opts = {});
BoundReport bound_est7(const BlockMatrix& t, AlphaSpec a, const SymbolFunctionPair& fg,
                       const BoundOptions& opts = {});
// Bound on ||T||_alpha (the p-th root already taken).
BoundReport bound_est8(const BlockMatrix& t, AlphaSpec a, const SymbolFunctionPair& fg, double p,
                       const BoundOptions& opts = {});
BoundReport bound_est9(const BlockMatrix& t, AlphaSpec a, const SymbolFunctionPair& fg,
                       const BoundOptions& opts = {});

struct DiagBlockBounds {
    double lower = 0.0;
    double upper_i = 0.0;
    double upper_ii = 0.0;
    double upper_iii = 0.0;
};

// Bounds on ||diag(X, Y)||_alpha from the alpha-norms and numerical radii of X and Y.
DiagBlockBounds diag_block_bounds(const ComplexMatrix& x, const ComplexMatrix& y, AlphaSpec a,
                                  const AlphaNormOptions& solver = {});

// Exact alpha-norm of [[0, X], [0, 0]].
double exact_nilpotent_alpha_norm(const ComplexMatrix& x, AlphaSpec a);

enum class MinimizeMode { convex_ternary, grid_refine };

struct AlphaMinimum {
    double alpha = 0.0;
    double value = 0.0;
};

inline constexpr double kAlphaResolution = 1e-6;

// Minimum of phi over [0,1]. Ties resolve to the smallest alpha.
AlphaMinimum minimize_over_alpha(const std::function<double(double)>& phi, MinimizeMode mode);

// est6 / est7 / est8 / est9 with alpha chosen to minimize the bound.
BoundReport minimized_bound(const BlockMatrix& t, Theorem theorem, const SymbolFunctionPair& fg, double p,
                            const BoundOptions& opts = {});

enum class CorollaryBuilder { est6, est7, est9 };

// w(T) <= min_alpha sqrt(||alpha |R|^2 + (1-alpha)|S|^2||) <= w(T~).
// reference = w(T); cap = w(T~).
BoundReport corollary_w_bound(const BlockMatrix& t, CorollaryBuilder builder,
                              const SymbolFunctionPair& fg = SymbolFunctionPair::power(0.5),
                              const BoundOptions& opts = {});

// ||T|| <= min_alpha sqrt(||alpha |R|^2 + (1-alpha)|S|^2||) / max(1/2, sqrt(1-alpha)) <= ||S||.
// reference = ||T||; cap = ||S||.
BoundReport corollary_opnorm_bound(const BlockMatrix& t, const BoundOptions& opts = {});

}  // namespace alphanorm
