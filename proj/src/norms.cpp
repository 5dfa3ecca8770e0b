#include "alphanorm/norms.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "alphanorm/errors.hpp"
#include "alphanorm/random.hpp"

namespace alphanorm {

AlphaSpec::AlphaSpec(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in [0,1], got " + std::to_string(alpha));
    }
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (!is_square(m)) {
        throw DimensionError(std::string(what) + ": matrix must be square, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

bool is_zero(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff() == 0.0; }

ComplexVector unit_basis(Eigen::Index n) {
    ComplexVector e = ComplexVector::Zero(n);
    e(0) = 1.0;
    return e;
}

// lambda_max(cos(theta) Re(M) - sin(theta) Im(M)) = support function of W(M).
class SupportFunction {
public:
    explicit SupportFunction(const ComplexMatrix& m) {
        auto [re, im] = hermitian_parts(m);
        re_ = std::move(re);
        im_ = std::move(im);
    }

    double operator()(double theta) const {
        const ComplexMatrix h = std::cos(theta) * re_ - std::sin(theta) * im_;
        solver_.compute(h, Eigen::EigenvaluesOnly);
        return solver_.eigenvalues()(h.rows() - 1);
    }

    ComplexVector top_vector(double theta) const {
        const ComplexMatrix h = std::cos(theta) * re_ - std::sin(theta) * im_;
        solver_.compute(h, Eigen::ComputeEigenvectors);
        return solver_.eigenvectors().col(h.rows() - 1);
    }

private:
    ComplexMatrix re_, im_;
    mutable Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver_;
};

struct Arc {
    double t0, h0, t1, h1, upper;
};

struct ArcOrder {
    bool operator()(const Arc& a, const Arc& b) const { return a.upper < b.upper; }
};

// Upper bound of the support function on [t0, t1] (t1 - t0 < pi). W(M) lies in
// the wedge cut out by the two supporting lines; its vertex P bounds every
// intermediate direction. Combined with the Lipschitz bound (constant ||M||).
double arc_upper(double t0, double h0, double t1, double h1, double lip) {
    const double dt = t1 - t0;
    const double lipschitz = 0.5 * (h0 + h1 + lip * dt);
    // Re(e^{it} z) = cos(t) x - sin(t) y.
    const double c0 = std::cos(t0), s0 = std::sin(t0);
    const double c1 = std::cos(t1), s1 = std::sin(t1);
    const double det = -c0 * s1 + s0 * c1;  // = sin(t0 - t1)
    double wedge = lipschitz;
    if (std::abs(det) > 1e-300) {
        const double x = (-s1 * h0 + s0 * h1) / det;
        const double y = (-c1 * h0 + c0 * h1) / det;
        const double r = std::hypot(x, y);
        double peak = std::fmod(-std::atan2(y, x) - t0, 2.0 * std::numbers::pi);
        if (peak < 0.0) peak += 2.0 * std::numbers::pi;
        wedge = (peak <= dt) ? r : std::max(h0, h1);
        wedge += 16.0 * DBL_EPSILON * (std::abs(h0) + std::abs(h1) + lip) * (1.0 + 1.0 / std::abs(det));
    }
    return std::min(lipschitz, wedge);
}

}  // namespace

double operator_norm(const ComplexMatrix& m) { return spectral_norm(m); }

double spectral_radius(const ComplexMatrix& m) {
    require_square(m, "spectral_radius");
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

NumericalRadiusResult numerical_radius_enclosure(const ComplexMatrix& m, double tol) {
    require_square(m, "numerical_radius");
    if (!(tol > 0.0)) throw DomainError("numerical_radius: tol must be positive");

    NumericalRadiusResult out;
    if (is_zero(m)) return out;
    if (m.rows() == 1) {
        const double v = std::abs(m(0, 0));
        out.value = out.lower = out.upper = v;
        out.theta = m(0, 0) == Complex(0.0) ? 0.0 : -std::arg(m(0, 0));
        return out;
    }

    const SupportFunction support(m);
    const double lip = operator_norm(m);
    constexpr int kGrid = 360;
    const double step = 2.0 * std::numbers::pi / kGrid;

    std::vector<double> h(kGrid + 1);
    for (int k = 0; k < kGrid; ++k) h[k] = support(k * step);
    h[kGrid] = h[0];
    out.evaluations = kGrid;

    out.lower = h[0];
    for (int k = 1; k < kGrid; ++k) {
        if (h[k] > out.lower) {
            out.lower = h[k];
            out.theta = k * step;
        }
    }

    std::priority_queue<Arc, std::vector<Arc>, ArcOrder> heap;
    for (int k = 0; k < kGrid; ++k) {
        const double t0 = k * step;
        const double t1 = (k + 1) * step;
        heap.push({t0, h[k], t1, h[k + 1], arc_upper(t0, h[k], t1, h[k + 1], lip)});
    }

    while (!heap.empty() && heap.top().upper - out.lower > tol) {
        const Arc a = heap.top();
        heap.pop();
        const double tm = 0.5 * (a.t0 + a.t1);
        if (tm <= a.t0 || tm >= a.t1) {
            // Interval exhausted at double resolution; keep its bound as final.
            heap.push({a.t0, a.h0, a.t1, a.h1, std::max(a.h0, a.h1)});
            break;
        }
        const double hm = support(tm);
        ++out.evaluations;
        if (hm > out.lower) {
            out.lower = hm;
            out.theta = tm;
        }
        heap.push({a.t0, a.h0, tm, hm, arc_upper(a.t0, a.h0, tm, hm, lip)});
        heap.push({tm, hm, a.t1, a.h1, arc_upper(tm, hm, a.t1, a.h1, lip)});
    }
    out.upper = heap.empty() ? out.lower : std::max(out.lower, heap.top().upper);
    out.value = out.lower;
    return out;
}

double numerical_radius(const ComplexMatrix& m, double tol) {
    return numerical_radius_enclosure(m, tol).value;
}

double alpha_objective(const ComplexMatrix& m, double alpha, const ComplexVector& x) {
    const ComplexVector mx = m * x;
    const Complex q = x.dot(mx);  // <Mx, x>
    return alpha * std::norm(q) + (1.0 - alpha) * mx.squaredNorm();
}

double default_alpha_width(const ComplexMatrix& m) {
    const double n = operator_norm(m);
    return 1e-6 * std::max(1.0, n * n);
}

namespace {

// Branch and bound for sup_x alpha|<Mx,x>|^2 + (1-alpha)||Mx||^2, 0 < alpha <= 1.
//
// For z = (a,b) in R^2 let
//   h(z) = lambda_max((1-alpha) M*M + 2 alpha (a Re(M) + b Im(M))),
//   g(z) = h(z) - alpha |z|^2.
// Then sup_x F(x) = max_z g(z), attained at z = (Re<Mx,x>, Im<Mx,x>) so |z| <= w(M).
// Every g(z) is a lower bound (2 alpha mu s - alpha mu^2 <= alpha s^2). h is convex,
// so on a triangle h lies below the affine interpolant of its vertex values, and
// max over the triangle of (interpolant - alpha|z|^2) is a certified upper bound.
// This is the rotation/radius parametrization written in Cartesian form
// (a, b) = mu (cos theta, -sin theta).
class AlphaSearch {
public:
    AlphaSearch(const ComplexMatrix& m, double alpha, double radius, double norm)
        : m_(m), alpha_(alpha), radius_(radius) {
        auto [re, im] = hermitian_parts(m);
        re_ = std::move(re);
        im_ = std::move(im);
        gram_ = (1.0 - alpha) * (m.adjoint() * m);
        // Eigenvalue backward error allowance.
        pad_ = 256.0 * DBL_EPSILON * std::max(1.0, norm * norm) * double(m.rows());
        lip_scale_ = 2.0 * alpha;
    }

    struct Vertex {
        double a, b, h, g;
    };

    struct Tri {
        int apex, h1, h2;  // right angle at apex, hypotenuse h1-h2
        double upper;
    };

    AlphaNormResult run(double width, std::size_t max_evals) {
        constexpr int kGrid = 8;
        const double step = 2.0 * radius_ / kGrid;
        std::vector<int> idx((kGrid + 1) * (kGrid + 1));
        for (int i = 0; i <= kGrid; ++i)
            for (int j = 0; j <= kGrid; ++j)
                idx[i * (kGrid + 1) + j] = vertex(-radius_ + i * step, -radius_ + j * step);

        auto cmp = [](const Tri& x, const Tri& y) { return x.upper < y.upper; };
        std::priority_queue<Tri, std::vector<Tri>, decltype(cmp)> heap(cmp);
        for (int i = 0; i < kGrid; ++i) {
            for (int j = 0; j < kGrid; ++j) {
                const int v00 = idx[i * (kGrid + 1) + j];
                const int v10 = idx[(i + 1) * (kGrid + 1) + j];
                const int v01 = idx[i * (kGrid + 1) + j + 1];
                const int v11 = idx[(i + 1) * (kGrid + 1) + j + 1];
                heap.push(make_tri(v00, v10, v01));
                heap.push(make_tri(v11, v01, v10));
            }
        }

        ascend(best_x_, 200);

        bool converged = true;
        while (!heap.empty() && !within(heap.top().upper, width)) {
            if (evaluations_ >= max_evals) {
                converged = false;
                break;
            }
            const Tri t = heap.top();
            heap.pop();
            const Vertex& p = verts_[t.h1];
            const Vertex& q = verts_[t.h2];
            const int mid = vertex(0.5 * (p.a + q.a), 0.5 * (p.b + q.b));
            heap.push(make_tri(mid, t.h1, t.apex));
            heap.push(make_tri(mid, t.apex, t.h2));
        }
        ascend(best_x_, 50);

        AlphaNormResult out;
        const double upper_sq = heap.empty() ? best_f_ : std::max(best_f_, heap.top().upper);
        out.lower = std::sqrt(std::max(0.0, best_f_));
        out.upper = std::sqrt(std::max(0.0, upper_sq));
        out.value = out.lower;
        out.witness = best_x_;
        out.iterations = evaluations_;
        out.converged = converged && within(upper_sq, width);
        return out;
    }

private:
    bool within(double upper_sq, double width) const {
        if (upper_sq - best_f_ > width) return false;
        const double lo = std::sqrt(std::max(0.0, best_f_));
        const double hi = std::sqrt(std::max(0.0, upper_sq));
        return hi - lo <= width;
    }

    // Top eigenpair of the shifted Gram matrix at z; returns h(z).
    double top(double a, double b, ComplexVector& x) {
        const ComplexMatrix k = gram_ + (2.0 * alpha_ * a) * re_ + (2.0 * alpha_ * b) * im_;
        solver_.compute(k, Eigen::ComputeEigenvectors);
        const Eigen::Index n = k.rows();
        x = solver_.eigenvectors().col(n - 1);
        ++evaluations_;
        return solver_.eigenvalues()(n - 1);
    }

    void consider(const ComplexVector& x) {
        const double f = alpha_objective(m_, alpha_, x);
        if (f > best_f_ || best_x_.size() == 0) {
            best_f_ = f;
            best_x_ = x;
        }
    }

    int vertex(double a, double b) {
        const auto key = std::make_pair(a, b);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        ComplexVector x;
        const double h = top(a, b, x);
        consider(x);
        verts_.push_back({a, b, h, h - alpha_ * (a * a + b * b)});
        const int id = static_cast<int>(verts_.size()) - 1;
        cache_.emplace(key, id);
        return id;
    }

    // Fixed-point ascent: z <- (Re<Mx,x>, Im<Mx,x>), x <- top eigenvector at z.
    // F is non-decreasing along the iteration.
    void ascend(ComplexVector x, int steps) {
        double prev = alpha_objective(m_, alpha_, x);
        for (int k = 0; k < steps; ++k) {
            const Complex q = x.dot(m_ * x);
            ComplexVector next;
            top(q.real(), q.imag(), next);
            const double f = alpha_objective(m_, alpha_, next);
            consider(next);
            if (f <= prev * (1.0 + 1e-15)) break;
            prev = f;
            x = std::move(next);
        }
    }

    double edge_peak(const Vertex& u, const Vertex& v) const {
        const double ea = v.a - u.a, eb = v.b - u.b;
        const double e2 = ea * ea + eb * eb;
        const double ue = u.a * ea + u.b * eb;
        double t = (v.h - u.h - 2.0 * alpha_ * ue) / (2.0 * alpha_ * e2);
        t = std::clamp(t, 0.0, 1.0);
        const double za = u.a + t * ea, zb = u.b + t * eb;
        return u.h + t * (v.h - u.h) - alpha_ * (za * za + zb * zb);
    }

    double convex_bound(const Vertex& p0, const Vertex& p1, const Vertex& p2) const {
        double best = std::max({edge_peak(p0, p1), edge_peak(p1, p2), edge_peak(p2, p0)});
        // Interior stationary point of the affine interpolant minus alpha|z|^2.
        const double d1a = p1.a - p0.a, d1b = p1.b - p0.b;
        const double d2a = p2.a - p0.a, d2b = p2.b - p0.b;
        const double det = d1a * d2b - d1b * d2a;
        if (det != 0.0) {
            const double r1 = p1.h - p0.h, r2 = p2.h - p0.h;
            const double ca = (r1 * d2b - r2 * d1b) / det;
            const double cb = (d1a * r2 - d2a * r1) / det;
            const double za = ca / (2.0 * alpha_), zb = cb / (2.0 * alpha_);
            // Barycentric coordinates of z relative to p0.
            const double wa = za - p0.a, wb = zb - p0.b;
            const double l1 = (wa * d2b - wb * d2a) / det;
            const double l2 = (d1a * wb - d1b * wa) / det;
            if (l1 >= 0.0 && l2 >= 0.0 && l1 + l2 <= 1.0) {
                const double lin = p0.h + ca * wa + cb * wb;
                best = std::max(best, lin - alpha_ * (za * za + zb * zb));
            }
        }
        return best;
    }

    // |grad g| <= 2 alpha (w(M) + |z|); radius_ bounds w(M).
    double lipschitz_bound(const Vertex& p0, const Vertex& p1, const Vertex& p2) const {
        const auto dist = [](const Vertex& u, const Vertex& v) { return std::hypot(u.a - v.a, u.b - v.b); };
        const double d01 = dist(p0, p1), d12 = dist(p1, p2), d20 = dist(p2, p0);
        const double zmax = std::max({std::hypot(p0.a, p0.b), std::hypot(p1.a, p1.b), std::hypot(p2.a, p2.b)});
        const double lip = lip_scale_ * (radius_ + zmax);
        return std::min({p0.g + lip * std::max(d01, d20), p1.g + lip * std::max(d01, d12),
                         p2.g + lip * std::max(d12, d20)});
    }

    Tri make_tri(int apex, int h1, int h2) const {
        const Vertex& p0 = verts_[apex];
        const Vertex& p1 = verts_[h1];
        const Vertex& p2 = verts_[h2];
        const double ub = std::min(convex_bound(p0, p1, p2), lipschitz_bound(p0, p1, p2)) + pad_;
        return {apex, h1, h2, ub};
    }

    const ComplexMatrix& m_;
    double alpha_;
    double radius_;
    double pad_ = 0.0;
    double lip_scale_ = 0.0;
    ComplexMatrix re_, im_, gram_;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver_;
    std::vector<Vertex> verts_;
    std::map<std::pair<double, double>, int> cache_;
    double best_f_ = -1.0;
    ComplexVector best_x_;
    std::size_t evaluations_ = 0;
};

AlphaNormResult exact_result(double v, ComplexVector witness) {
    AlphaNormResult out;
    out.value = out.lower = out.upper = v;
    out.witness = std::move(witness);
    return out;
}

}  // namespace

AlphaNormResult alpha_norm(const ComplexMatrix& m, AlphaSpec a, double width) {
    AlphaNormOptions opts;
    if (!(width > 0.0)) throw DomainError("alpha_norm: width must be positive");
    opts.width = width;
    return alpha_norm(m, a, opts);
}

AlphaNormResult alpha_norm(const ComplexMatrix& m, AlphaSpec a, const AlphaNormOptions& opts) {
    require_square(m, "alpha_norm");
    const double width = opts.width > 0.0 ? opts.width : default_alpha_width(m);
    const double alpha = a.value();
    const Eigen::Index n = m.rows();

    if (is_zero(m)) return exact_result(0.0, unit_basis(n));
    if (n == 1) return exact_result(std::abs(m(0, 0)), unit_basis(1));

    if (alpha == 0.0) {
        const Svd d = svd(m);
        return exact_result(d.singular_values(0), d.v.col(0));
    }

    if (alpha == 1.0 && opts.endpoint_shortcuts) {
        const NumericalRadiusResult nr = numerical_radius_enclosure(m, std::min(kDefaultNumradTol, width));
        const ComplexVector x = SupportFunction(m).top_vector(nr.theta);
        AlphaNormResult out;
        out.lower = std::max(nr.lower, std::sqrt(alpha_objective(m, 1.0, x)));
        out.upper = std::max(out.lower, nr.upper);
        out.value = out.lower;
        out.witness = x;
        out.iterations = nr.evaluations;
        return out;
    }

    const double norm = operator_norm(m);
    // w(M) <= (||M|| + ||M^2||^{1/2}) / 2.
    const double radius = std::min(norm, 0.5 * (norm + std::sqrt(operator_norm(m * m))));
    AlphaSearch search(m, alpha, radius * (1.0 + 1e-12) + 1e-300, norm);
    return search.run(width, opts.max_evaluations);
}

double alpha_norm_sample(const ComplexMatrix& m, AlphaSpec a, std::size_t trials, std::uint64_t seed) {
    require_square(m, "alpha_norm_sample");
    if (trials < 1) throw DomainError("alpha_norm_sample: trials must be >= 1");
    const double alpha = a.value();
    const Eigen::Index n = m.rows();
    Rng rng(seed);

    constexpr std::size_t kStarts = 5;
    std::vector<std::pair<double, ComplexVector>> starts;
    for (std::size_t t = 0; t < trials; ++t) {
        ComplexVector x = random_unit_vector(n, rng);
        const double f = alpha_objective(m, alpha, x);
        if (starts.size() < kStarts) {
            starts.emplace_back(f, std::move(x));
        } else {
            auto worst = std::min_element(starts.begin(), starts.end(),
                                          [](const auto& l, const auto& r) { return l.first < r.first; });
            if (f > worst->first) *worst = {f, std::move(x)};
        }
    }

    // Projected gradient ascent on the unit sphere with step halving.
    const ComplexMatrix mh = m.adjoint();
    const ComplexMatrix gram = mh * m;
    const double norm2 = std::max(gram.cwiseAbs().maxCoeff() * double(n), 1e-300);
    double best = 0.0;
    for (auto& [f, x] : starts) {
        double step = 1.0 / norm2;
        for (int it = 0; it < 500 && step > 1e-18; ++it) {
            const ComplexVector mx = m * x;
            const Complex q = x.dot(mx);
            ComplexVector grad = alpha * (std::conj(q) * mx + q * (mh * x)) + (1.0 - alpha) * (gram * x);
            grad -= x * x.dot(grad).real();
            if (grad.norm() < 1e-15 * norm2) break;
            ComplexVector trial = (x + step * grad).normalized();
            const double ft = alpha_objective(m, alpha, trial);
            if (ft > f) {
                f = ft;
                x = std::move(trial);
                step *= 1.5;
            } else {
                step *= 0.5;
            }
        }
        best = std::max(best, f);
    }
    return std::sqrt(best);
}

}  // namespace alphanorm
