#include <cmath>

#include "alphanorm/blocks.hpp"
#include "alphanorm/errors.hpp"
#include "alphanorm/random.hpp"
#include "doctest.h"

using namespace alphanorm;

namespace {

ComplexMatrix scalar(double v) { return ComplexMatrix::Constant(1, 1, v); }

BlockMatrix scalar_blocks(double a, double b, double c, double d) {
    return BlockMatrix({1, 1}, {1, 1}, {scalar(a), scalar(b), scalar(c), scalar(d)});
}

RealMatrix real2(double a, double b, double c, double d) {
    RealMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

BlockMatrix random_blocks(Rng& rng, std::size_t n, bool square_diag = true) {
    std::vector<Eigen::Index> rows, cols;
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(rng.uniform_int(1, 4));
        cols.push_back(square_diag ? rows.back() : rng.uniform_int(1, 4));
    }
    BlockMatrix t = BlockMatrix::zeros(rows, cols);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t.set_block(i, j, ginibre(rows[i], cols[j], rng));
    return t;
}

}  // namespace

TEST_CASE("BlockMatrix construction and validation") {
    CHECK_THROWS_AS(BlockMatrix({1, 1}, {1, 1}, {scalar(0)}), DimensionError);
    CHECK_THROWS_AS(BlockMatrix({1, 2}, {1, 1}, {scalar(0), scalar(0), scalar(0), scalar(0)}), DimensionError);
    CHECK_THROWS_AS(BlockMatrix({}, {}, {}), DimensionError);
    CHECK_THROWS_AS(BlockMatrix::zeros({1, 0}, {1, 1}), DimensionError);
    BlockMatrix t = BlockMatrix::zeros({2, 1}, {2, 1});
    CHECK_THROWS_AS(t.set_block(0, 1, ComplexMatrix::Zero(1, 1)), DimensionError);
    CHECK(t.square_diagonal());
    CHECK_FALSE(t.uniform());
    CHECK(BlockMatrix::zeros({3, 3}, {3, 3}).uniform());
    CHECK_FALSE(BlockMatrix::zeros({2, 1}, {1, 2}).square_diagonal());
}

TEST_CASE("assemble and split") {
    ComplexMatrix shift(2, 2);
    shift << 0, 1, 0, 0;
    CHECK(assemble(scalar_blocks(0, 1, 0, 0)) == shift);

    Rng rng(31);
    const ComplexMatrix x = ginibre(2, 2, rng), y = ginibre(3, 3, rng);
    BlockMatrix d = BlockMatrix::zeros({2, 3}, {2, 3});
    d.set_block(0, 0, x);
    d.set_block(1, 1, y);
    const ComplexMatrix direct = assemble(d);
    CHECK(direct.topLeftCorner(2, 2) == x);
    CHECK(direct.bottomRightCorner(3, 3) == y);
    CHECK(direct.topRightCorner(2, 3).isZero(0.0));

    for (int k = 0; k < 10; ++k) {
        const BlockMatrix t = random_blocks(rng, 3, false);
        CHECK(BlockMatrix::split(assemble(t), t.row_dims(), t.col_dims()) == t);
        // <Tx, x> = sum_ij <T_ij x_j, x_i>
        const ComplexMatrix m = assemble(t);
        if (m.rows() == m.cols()) {
            const ComplexVector v = random_unit_vector(m.rows(), rng);
            Complex sum = 0;
            Eigen::Index r0 = 0;
            for (std::size_t i = 0; i < 3; ++i) {
                Eigen::Index c0 = 0;
                for (std::size_t j = 0; j < 3; ++j) {
                    const ComplexVector xj = v.segment(c0, t.col_dims()[j]);
                    const ComplexVector xi = v.segment(r0, t.row_dims()[i]);
                    sum += xi.dot(t.block(i, j) * xj);
                    c0 += t.col_dims()[j];
                }
                r0 += t.row_dims()[i];
            }
            CHECK(std::abs(sum - v.dot(m * v)) < 1e-12);
        }
    }
}

TEST_CASE("SymbolFunctionPair") {
    const auto p = SymbolFunctionPair::power(0.25);
    CHECK(p.is_power());
    CHECK(p.exponent() == 0.25);
    CHECK(p.f(16.0) == doctest::Approx(2.0));
    CHECK(p.g(16.0) == doctest::Approx(8.0));
    CHECK_THROWS_AS(SymbolFunctionPair::power(1.5), DomainError);
    CHECK_THROWS_AS(SymbolFunctionPair::tabulated([](double t) { return t; }, [](double t) { return t; }, "bad"),
                    DomainError);
    CHECK_THROWS_AS(SymbolFunctionPair::tabulated([](double t) { return -std::sqrt(t); },
                                                  [](double t) { return -std::sqrt(t); }, "neg"),
                    DomainError);
    const auto tab = SymbolFunctionPair::tabulated([](double t) { return std::sqrt(t); },
                                                   [](double t) { return std::sqrt(t); }, "sqrt");
    CHECK_FALSE(tab.is_power());
    CHECK_THROWS_AS(tab.exponent(), DomainError);
}

TEST_CASE("power and tabulated routes agree") {
    Rng rng(32);
    const auto pw = SymbolFunctionPair::power(0.5);
    const auto tab = SymbolFunctionPair::tabulated([](double t) { return std::sqrt(t); },
                                                   [](double t) { return std::sqrt(t); }, "sqrt");
    for (int k = 0; k < 10; ++k) {
        const ComplexMatrix a = ginibre(rng.uniform_int(1, 4), rng.uniform_int(1, 4), rng);
        CHECK(pw.f_abs_norm(a) == doctest::Approx(tab.f_abs_norm(a)).epsilon(1e-9));
        CHECK(pw.g_abs_adjoint_norm(a) == doctest::Approx(tab.g_abs_adjoint_norm(a)).epsilon(1e-9));
        const ComplexMatrix sq = ginibre(3, 3, rng);
        CHECK(pw.diagonal_term(sq) == doctest::Approx(tab.diagonal_term(sq)).epsilon(1e-9));
    }
}

TEST_CASE("mixed term of a power pair is the operator norm") {
    Rng rng(33);
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto fg = SymbolFunctionPair::power(s);
        for (int k = 0; k < 5; ++k) {
            const ComplexMatrix a = ginibre(rng.uniform_int(1, 4), rng.uniform_int(1, 4), rng);
            CHECK(std::abs(fg.mixed_term(a) - operator_norm(a)) <= 1e-9 * std::max(1.0, operator_norm(a)));
        }
    }
}

TEST_CASE("build_S") {
    CHECK(build_S(scalar_blocks(0, 2, 0, 0)) == real2(0, 2, 0, 0));
    CHECK(build_S(BlockMatrix::zeros({2, 3}, {2, 3})).isZero(0.0));
    Rng rng(34);
    for (int k = 0; k < 10; ++k) {
        const BlockMatrix t = random_blocks(rng, 3);
        CHECK(operator_norm(assemble(t)) <= operator_norm(build_S(t).cast<Complex>()) + 1e-8);
    }
}

TEST_CASE("est6 builders") {
    const BlockMatrix t = scalar_blocks(0, 2, 0, 0);
    CHECK((build_R_est6(t) - real2(0, 1, 1, 0)).norm() < 1e-12);
    CHECK((build_Ttilde_est6(t) - real2(0, 2, 0, 0)).norm() < 1e-12);

    Rng rng(35);
    const ComplexMatrix x = ginibre(2, 2, rng), y = ginibre(3, 3, rng);
    BlockMatrix d = BlockMatrix::zeros({2, 3}, {2, 3});
    d.set_block(0, 0, x);
    d.set_block(1, 1, y);
    const AuxMatrix r = build_R_est6(d);
    CHECK(r(0, 0) == doctest::Approx(numerical_radius(x)));
    CHECK(r(1, 1) == doctest::Approx(numerical_radius(y)));
    CHECK(r(0, 1) == 0.0);

    BlockMatrix h = BlockMatrix::zeros({2, 2}, {2, 2});
    const ComplexMatrix b = ginibre(2, 2, rng);
    h.set_block(0, 1, b);
    h.set_block(1, 0, b.adjoint());
    CHECK(build_R_est6(h)(0, 1) == doctest::Approx(operator_norm(b)));

    const BlockMatrix g = random_blocks(rng, 3);
    const AuxMatrix tt = build_Ttilde_est6(g);
    CHECK((0.5 * (tt + tt.transpose()) - build_R_est6(g)).norm() == 0.0);

    CHECK_THROWS_AS(build_R_est6(BlockMatrix::zeros({2, 1}, {1, 2})), DimensionError);
}

TEST_CASE("est7 builder") {
    const BlockMatrix t = scalar_blocks(0, 2, 0, 0);
    CHECK((build_R_est7(t, SymbolFunctionPair::power(0.5)) - real2(0, 1, 1, 0)).norm() < 1e-12);
    CHECK(build_R_est7(BlockMatrix::zeros({2, 2}, {2, 2}), SymbolFunctionPair::power(0.5)).isZero(0.0));

    Rng rng(36);
    for (int k = 0; k < 10; ++k) {
        BlockMatrix g = random_blocks(rng, 3);
        for (std::size_t i = 0; i < 3; ++i) g.set_block(i, i, ComplexMatrix::Zero(g.row_dims()[i], g.col_dims()[i]));
        const AuxMatrix r7 = build_R_est7(g, SymbolFunctionPair::power(1.0));
        const AuxMatrix r6 = build_R_est6(g);
        CHECK((r7 - r6).cwiseAbs().maxCoeff() < 1e-9);
        const AuxMatrix half = build_R_est7(g, SymbolFunctionPair::power(0.5));
        CHECK(half == half.transpose());
        CHECK((half.array() >= 0.0).all());
        CHECK(((half - r6).array() <= 1e-12).all());
    }

    BuilderOptions strict;
    strict.strict = true;
    CHECK_THROWS_AS(build_R_est7(BlockMatrix::zeros({2, 3}, {2, 3}), SymbolFunctionPair::power(0.5), strict),
                    DimensionError);
    CHECK_NOTHROW(build_R_est7(BlockMatrix::zeros({2, 2}, {2, 2}), SymbolFunctionPair::power(0.5), strict));
}

TEST_CASE("diagonal builder") {
    const auto fg = SymbolFunctionPair::power(0.5);
    CHECK((build_R_diag(scalar_blocks(0, 1, 0, 0), fg) - real2(0, 0.5, 0.5, 0)).norm() < 1e-12);

    Rng rng(37);
    BlockMatrix t = random_blocks(rng, 2);
    const ComplexMatrix g = ginibre(t.row_dims()[0], t.row_dims()[0], rng);
    const ComplexMatrix psd = g.adjoint() * g;
    t.set_block(0, 0, psd);
    CHECK(build_R_diag(t, fg)(0, 0) == doctest::Approx(operator_norm(psd)).epsilon(1e-9));
    CHECK(build_R_diag(t, fg)(0, 1) == build_R_est7(t, fg)(0, 1));

    BlockMatrix z = random_blocks(rng, 3);
    for (std::size_t i = 0; i < 3; ++i) z.set_block(i, i, ComplexMatrix::Zero(z.row_dims()[i], z.col_dims()[i]));
    const AuxMatrix rz = build_R_diag(z, fg);
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(rz(i, i) == 0.0);
}
