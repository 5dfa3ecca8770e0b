#pragma once

#include <cstdint>
#include <random>

#include "alphanorm/linalg.hpp"

namespace alphanorm {

// SplitMix64 finalizer (Steele, Lea, Flood 2014): increment 0x9e3779b97f4a7c15,
// multipliers 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb.
std::uint64_t splitmix64(std::uint64_t x);

// Per-trial seed derived from a master seed. Platform independent.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 with hand-rolled uniform/normal transforms so that streams are
// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform();  // [0, 1)
    double normal();   // standard normal
    // Complex standard normal: E|z|^2 = 1.
    Complex complex_normal();
    // Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);
ComplexMatrix haar_unitary(Eigen::Index n, Rng& rng);
ComplexVector random_unit_vector(Eigen::Index n, Rng& rng);

}  // namespace alphanorm
