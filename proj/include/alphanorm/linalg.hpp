#pragma once

// Dense complex linear algebra on top of Eigen: Hermitian parts, matrix
// absolute value, spectral functional calculus and the decompositions the
// norm solvers are built on.

#include <complex>
#include <functional>
#include <utility>

#include <Eigen/Dense>

namespace alphanorm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Relative tolerance used to decide whether a matrix is Hermitian.
inline constexpr double kHermitianTol = 1e-10;
// Eigenvalues in [-kPsdClamp * ||A||, 0) are treated as zero by spectral_apply.
inline constexpr double kPsdClamp = 1e-8;

// Throws DimensionError / DomainError unless rows, cols >= 1 and all entries finite.
void validate(const ComplexMatrix& m);

bool is_square(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTol);

// (Re(M), Im(M)) with Re(M) = (M + M*)/2 and Im(M) = (M - M*)/(2i).
std::pair<ComplexMatrix, ComplexMatrix> hermitian_parts(const ComplexMatrix& m);

struct HermitianEig {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // orthonormal columns, first nonzero entry real positive
};

// Full eigendecomposition of a Hermitian matrix. Throws ShapeError if m is not
// Hermitian within kHermitianTol (relative to max(1, ||m||)).
HermitianEig hermitian_eig(const ComplexMatrix& m);

double lambda_max(const ComplexMatrix& m);

struct Svd {
    RealVector singular_values;  // descending, length min(rows, cols)
    ComplexMatrix u;             // rows x rows
    ComplexMatrix v;             // cols x cols
};

Svd svd(const ComplexMatrix& m);
RealVector singular_values(const ComplexMatrix& m);

// |M| = (M*M)^{1/2}, a cols x cols positive semidefinite matrix.
ComplexMatrix matrix_abs(const ComplexMatrix& m);

using ScalarFunction = std::function<double(double)>;

// V f(Lambda) V* for a Hermitian positive semidefinite A.
ComplexMatrix spectral_apply(const ScalarFunction& f, const ComplexMatrix& a);

// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

}  // namespace alphanorm
