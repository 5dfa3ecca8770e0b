#include "alphanorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alphanorm/errors.hpp"

namespace alphanorm {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (!is_square(m)) {
        throw DimensionError(std::string(what) + ": matrix must be square, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void normalize_phases(ComplexMatrix& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            const double mag = std::abs(vectors(i, j));
            if (mag > 1e-12) {
                vectors.col(j) *= std::conj(vectors(i, j)) / mag;
                vectors(i, j) = Complex(mag, 0.0);
                break;
            }
        }
    }
}

}  // namespace

void validate(const ComplexMatrix& m) {
    if (m.rows() < 1 || m.cols() < 1) {
        throw DimensionError("matrix must have at least one row and one column");
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
                throw DomainError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") is not finite");
            }
        }
    }
}

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
    if (!is_square(m)) return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff() * std::sqrt(double(m.rows())));
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

std::pair<ComplexMatrix, ComplexMatrix> hermitian_parts(const ComplexMatrix& m) {
    require_square(m, "hermitian_parts");
    const ComplexMatrix adj = m.adjoint();
    ComplexMatrix re = (m + adj) * 0.5;
    ComplexMatrix im = (m - adj) * Complex(0.0, -0.5);
    return {std::move(re), std::move(im)};
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
    require_square(m, "hermitian_eig");
    if (!is_hermitian(m)) throw ShapeError("hermitian_eig: matrix is not Hermitian");
    const ComplexMatrix sym = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
    HermitianEig out{es.eigenvalues(), es.eigenvectors()};
    normalize_phases(out.vectors);
    return out;
}

double lambda_max(const ComplexMatrix& m) {
    require_square(m, "lambda_max");
    if (!is_hermitian(m)) throw ShapeError("lambda_max: matrix is not Hermitian");
    const ComplexMatrix sym = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

Svd svd(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> js(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return Svd{js.singularValues(), js.matrixU(), js.matrixV()};
}

RealVector singular_values(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> js(m);
    return js.singularValues();
}

double spectral_norm(const ComplexMatrix& m) {
    const RealVector sv = singular_values(m);
    return sv.size() == 0 ? 0.0 : sv(0);
}

ComplexMatrix matrix_abs(const ComplexMatrix& m) {
    // V Sigma V* with Sigma padded by zeros up to cols.
    const Svd d = svd(m);
    RealVector sigma = RealVector::Zero(m.cols());
    sigma.head(d.singular_values.size()) = d.singular_values;
    ComplexMatrix out = d.v * sigma.asDiagonal() * d.v.adjoint();
    return (out + out.adjoint()) * 0.5;
}

ComplexMatrix spectral_apply(const ScalarFunction& f, const ComplexMatrix& a) {
    require_square(a, "spectral_apply");
    if (!is_hermitian(a)) throw ShapeError("spectral_apply: matrix is not Hermitian");
    const ComplexMatrix sym = (a + a.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
    const RealVector& lam = es.eigenvalues();
    const double norm = lam.cwiseAbs().maxCoeff();
    RealVector mapped(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        double t = lam(k);
        if (t < 0.0) {
            if (t < -kPsdClamp * norm) {
                throw PsdViolation("spectral_apply: eigenvalue " + std::to_string(t) +
                                   " violates positive semidefiniteness");
            }
            t = 0.0;
        }
        const double ft = f(t);
        if (!std::isfinite(ft) || ft < 0.0) {
            throw DomainError("spectral_apply: function must be finite and nonnegative on the spectrum");
        }
        mapped(k) = ft;
    }
    const ComplexMatrix& v = es.eigenvectors();
    ComplexMatrix out = v * mapped.asDiagonal() * v.adjoint();
    return (out + out.adjoint()) * 0.5;
}

}  // namespace alphanorm
