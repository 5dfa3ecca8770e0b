#include <cmath>

#include "alphanorm/errors.hpp"
#include "alphanorm/harness.hpp"
#include "alphanorm/json_io.hpp"
#include "alphanorm/random.hpp"
#include "doctest.h"

using namespace alphanorm;

namespace {

SuiteConfig single(EnsembleKind kind, int n, int dmin, int dmax, std::size_t trials, std::uint64_t seed,
                   std::vector<Check> checks) {
    SuiteConfig cfg;
    EnsembleSpec e;
    e.kind = kind;
    e.n_blocks = n;
    e.dim_min = dmin;
    e.dim_max = dmax;
    e.trials = trials;
    e.seed = seed;
    cfg.plans.push_back({e, std::move(checks)});
    return cfg;
}

}  // namespace

TEST_CASE("seed derivation is stable") {
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(derive_seed(42, 0) == derive_seed(42, 0));
    CHECK(derive_seed(42, 0) != derive_seed(42, 1));
    CHECK(derive_seed(42, 1) != derive_seed(43, 1));
}

TEST_CASE("generation is deterministic") {
    for (EnsembleKind kind : all_ensemble_kinds()) {
        EnsembleSpec spec;
        spec.kind = kind;
        spec.n_blocks = 3;
        spec.seed = 1234;
        CHECK(generate(spec, 5) == generate(spec, 5));
        CHECK(ensemble_from_string(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(ensemble_from_string("wishart"), DomainError);
}

TEST_CASE("ensemble structure") {
    EnsembleSpec spec;
    spec.seed = 9;
    spec.n_blocks = 2;

    spec.kind = EnsembleKind::hermitian;
    for (std::size_t k = 0; k < 5; ++k) {
        const ComplexMatrix m = assemble(generate(spec, k));
        CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
    }

    spec.kind = EnsembleKind::nilpotent_upper;
    const BlockMatrix nil = generate(spec, 0);
    CHECK(nil.block(1, 0).isZero(0.0));
    CHECK(nil.block(0, 0).isZero(0.0));
    CHECK(nil.block(1, 1).isZero(0.0));
    CHECK_FALSE(nil.block(0, 1).isZero(0.0));

    spec.kind = EnsembleKind::entrywise_nonneg;
    const ComplexMatrix pos = assemble(generate(spec, 0));
    CHECK((pos.real().array() >= 0.0).all());
    CHECK(pos.imag().isZero(0.0));

    spec.kind = EnsembleKind::unitary;
    const ComplexMatrix u = assemble(generate(spec, 0));
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm() < 1e-12);

    spec.kind = EnsembleKind::diag_blocks;
    const BlockMatrix d = generate(spec, 0);
    CHECK(d.block(0, 1).isZero(0.0));
    CHECK(d.square_diagonal());

    spec.kind = EnsembleKind::ginibre;
    spec.equal_dims = true;
    const BlockMatrix eq = generate(spec, 3);
    CHECK(eq.row_dims()[0] == eq.row_dims()[1]);
}

TEST_CASE("spec validation") {
    EnsembleSpec spec;
    spec.n_blocks = 5;
    CHECK_THROWS_AS(validate(spec), DomainError);
    spec.n_blocks = 2;
    spec.dim_max = 7;
    CHECK_THROWS_AS(validate(spec), DomainError);
    CHECK_THROWS_AS(default_suite("nope", 1, 1), DomainError);
    CHECK_THROWS_AS(default_suite("all", 0, 1), DomainError);
}

TEST_CASE("empty check selection gives an empty report") {
    const SuiteReport r = run_suite(single(EnsembleKind::ginibre, 2, 2, 2, 3, 1, {}));
    CHECK(r.records.empty());
    CHECK(r.summary.total == 0);
}

TEST_CASE("est6 on ginibre: one passing record per trial") {
    const SuiteReport r = run_suite(single(EnsembleKind::ginibre, 2, 2, 2, 10, 42, {Check::est6}));
    CHECK(r.records.size() == 10);
    CHECK(r.summary.passed == 10);
    CHECK(r.summary.failed == 0);
    for (const CheckRecord& rec : r.records) CHECK(rec.tightness.value() >= 1.0 - 1e-8);
}

TEST_CASE("an injected faulty bound fails and carries its reproducer") {
    SuiteConfig cfg = single(EnsembleKind::ginibre, 2, 2, 2, 4, 42, {Check::est6});
    cfg.inject_bound_offset = 1.0;
    const SuiteReport r = run_suite(cfg);
    CHECK(r.summary.failed > 0);
    REQUIRE(r.summary.worst.has_value());
    const CheckRecord& w = *r.summary.worst;
    CHECK(w.verdict == Verdict::fail);
    REQUIRE(w.input);
    CHECK(generate_from_seed(cfg.plans[0].ensemble, w.seed) == *w.input);
    const std::string json = suite_report_to_json(r);
    CHECK(json.find("\"input\"") != std::string::npos);
}

TEST_CASE("inapplicable checks become error records") {
    const SuiteReport r = run_suite(single(EnsembleKind::ginibre, 2, 1, 4, 3, 5, {Check::lemma24}));
    CHECK(r.summary.errors == 3);
    CHECK(r.records.front().verdict == Verdict::error);
    CHECK_FALSE(r.records.front().message.empty());
}

TEST_CASE("identity suite on small examples") {
    SuiteConfig cfg = single(EnsembleKind::ginibre, 2, 2, 3, 5, 77, {Check::prop21});
    cfg.plans[0].ensemble.equal_dims = true;
    const SuiteReport r = run_suite(cfg);
    CHECK(r.summary.total == 5 * 6);
    CHECK(r.summary.failed == 0);
    CHECK(r.summary.errors == 0);
}

TEST_CASE("summary counts and order independence") {
    SuiteConfig cfg = default_suite("lemmas", 2, 3);
    cfg.threads = 1;
    const SuiteReport serial = run_suite(cfg);
    cfg.threads = 3;
    const SuiteReport parallel = run_suite(cfg);
    CHECK(serial.summary.total == serial.records.size());
    CHECK(serial.summary.passed + serial.summary.failed + serial.summary.errors == serial.summary.total);
    CHECK(suite_report_to_json(serial) == suite_report_to_json(parallel));

    std::vector<CheckRecord> reversed(serial.records.rbegin(), serial.records.rend());
    const SuiteSummary s = summarize(reversed);
    CHECK(s.total == serial.summary.total);
    CHECK(s.min_slack == serial.summary.min_slack);
    CHECK(s.passed == serial.summary.passed);
    CHECK(s.mean_tightness.size() == serial.summary.mean_tightness.size());
    for (const auto& [th, v] : s.mean_tightness) CHECK(v == doctest::Approx(serial.summary.mean_tightness.at(th)));
}

TEST_CASE("default suites pass") {
    for (const std::string& name : suite_names()) {
        if (name == "all") continue;
        const SuiteReport r = run_suite(default_suite(name, 2, 11));
        INFO(name);
        CHECK(r.summary.total > 0);
        CHECK(r.summary.failed == 0);
        CHECK(r.summary.errors == 0);
    }
}
