#pragma once

#include <cstddef>
#include <cstdint>

#include "alphanorm/linalg.hpp"

namespace alphanorm {

// Weight alpha in [0,1]; the complementary weight is 1 - alpha.
class AlphaSpec {
public:
    explicit AlphaSpec(double alpha);
    double value() const { return alpha_; }
    double complement() const { return 1.0 - alpha_; }

private:
    double alpha_;
};

inline constexpr double kDefaultNumradTol = 1e-8;

struct NumericalRadiusResult {
    double value = 0.0;  // best attained lambda_max(Re(e^{i theta} M)); equals lower
    double lower = 0.0;
    double upper = 0.0;
    double theta = 0.0;  // maximizing rotation
    std::size_t evaluations = 0;
};

struct AlphaNormResult {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    ComplexVector witness;  // unit vector; sqrt(objective(witness)) == lower
    std::size_t iterations = 0;
    bool converged = true;
};

struct AlphaNormOptions {
    // Enclosure width on the squared objective; <= 0 selects default_alpha_width(M).
    double width = 0.0;
    std::size_t max_evaluations = 1'000'000;
    // Route alpha = 0 to operator_norm and alpha = 1 to numerical_radius.
    bool endpoint_shortcuts = true;
};

double operator_norm(const ComplexMatrix& m);
double spectral_radius(const ComplexMatrix& m);

// w(M) = max_theta lambda_max(Re(e^{i theta} M)), certified to within tol.
double numerical_radius(const ComplexMatrix& m, double tol = kDefaultNumradTol);
NumericalRadiusResult numerical_radius_enclosure(const ComplexMatrix& m,
                                                 double tol = kDefaultNumradTol);

// alpha |<Mx,x>|^2 + (1 - alpha) ||Mx||^2 for a (not necessarily unit) x.
double alpha_objective(const ComplexMatrix& m, double alpha, const ComplexVector& x);

double default_alpha_width(const ComplexMatrix& m);

AlphaNormResult alpha_norm(const ComplexMatrix& m, AlphaSpec a, double width);
AlphaNormResult alpha_norm(const ComplexMatrix& m, AlphaSpec a, const AlphaNormOptions& opts = {});

// Random-restart plus projected gradient ascent. Always a lower bound on the alpha-norm.
double alpha_norm_sample(const ComplexMatrix& m, AlphaSpec a, std::size_t trials,
                         std::uint64_t seed);

}  // namespace alphanorm
