#pragma once

// Seeded random ensembles and the verification suite that checks every
// inequality and identity on them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "alphanorm/blocks.hpp"

namespace alphanorm {

enum class EnsembleKind { ginibre, hermitian, unitary, nilpotent_upper, entrywise_nonneg, diag_blocks };

std::string to_string(EnsembleKind k);
EnsembleKind ensemble_from_string(const std::string& s);
const std::vector<EnsembleKind>& all_ensemble_kinds();

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::ginibre;
    int n_blocks = 2;    // 1..4
    int dim_min = 1;     // per block, 1..6
    int dim_max = 4;
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    bool equal_dims = false;  // every block gets the same (random) dimension
};

void validate(const EnsembleSpec& spec);

// Trial i is generated from derive_seed(spec.seed, i).
BlockMatrix generate(const EnsembleSpec& spec, std::size_t trial);
BlockMatrix generate_from_seed(const EnsembleSpec& spec, std::uint64_t trial_seed);

enum class Check {
    est6,
    est7,
    est8,
    est9,
    cor_w_est6,
    cor_w_est7,
    cor_w_est9,
    cor_opnorm,
    est1,
    equal1,
    prop21,
    lemma24,
    sandwich,
    endpoints,
    monotone,
    homogeneity,
    unitary_invariance,
    sample_oracle,
    kittaneh,
};

std::string to_string(Check c);

enum class Verdict { pass, fail, error };
std::string to_string(Verdict v);

struct CheckRecord {
    std::string check_id;
    std::uint64_t seed = 0;  // trial seed; generate_from_seed reproduces the input
    std::string theorem;
    std::optional<double> alpha, p, s;
    double lhs = 0.0;
    double rhs = 0.0;
    // "le": slack = rhs - lhs. "eq": slack = -|lhs - rhs|. Passes iff slack >= -tolerance.
    std::string relation = "le";
    double slack = 0.0;
    double tolerance = 0.0;
    std::optional<double> tightness;  // rhs / lhs for bound soundness records
    Verdict verdict = Verdict::pass;
    std::string message;
    // Trial input; serialized for fail / error records and the summary's worst record.
    std::shared_ptr<const BlockMatrix> input;
};

struct SuiteSummary {
    std::size_t total = 0, passed = 0, failed = 0, errors = 0;
    std::optional<double> min_slack;
    std::map<std::string, double> mean_tightness;  // by theorem
    std::optional<CheckRecord> worst;               // smallest slack + tolerance, with input
};

struct SuiteReport {
    std::vector<CheckRecord> records;
    SuiteSummary summary;
};

struct SuitePlan {
    EnsembleSpec ensemble;
    std::vector<Check> checks;
};

struct SuiteConfig {
    std::vector<SuitePlan> plans;
    std::vector<double> s_values{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> p_values{1.0, 1.5, 2.0, 3.0};
    double verdict_tol = 1e-8;
    double numrad_tol = 1e-8;
    // Sampled vector inequalities: unit vectors per trial and relative tolerance.
    std::size_t lemma_samples = 200;
    double lemma_tol = 1e-10;
    std::size_t oracle_trials = 200;
    // Subtracted from every est6..est9 bound value. Harness self-test only.
    double inject_bound_offset = 0.0;
    // 0: hardware concurrency capped by ALPHA_NORM_THREADS.
    unsigned threads = 0;
};

// Suites exposed by the CLI: all, est6, est7, est8, est9, prop21, equal1, est1, lemmas.
SuiteConfig default_suite(const std::string& name, std::size_t trials, std::uint64_t seed);
const std::vector<std::string>& suite_names();

// Per-trial records for one plan, in check order.
std::vector<CheckRecord> run_trial(const SuiteConfig& config, const SuitePlan& plan, std::size_t trial);

SuiteReport run_suite(const SuiteConfig& config);
SuiteSummary summarize(const std::vector<CheckRecord>& records);

}  // namespace alphanorm
