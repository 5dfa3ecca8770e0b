#pragma once

#include <stdexcept>
#include <string>

namespace alphanorm {

// Non-square input where a square matrix is required, or mismatched sizes.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input has the right size but the wrong structure (e.g. not Hermitian).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Eigenvalue more negative than the clamping threshold.
class PsdViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Parameter outside its admissible range (alpha, p, s, tolerances, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed matrix / block-matrix / grid text.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace alphanorm
