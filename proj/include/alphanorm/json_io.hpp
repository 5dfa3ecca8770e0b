#pragma once

#include <iosfwd>
#include <string>

#include "alphanorm/blocks.hpp"
#include "alphanorm/bounds.hpp"
#include "alphanorm/harness.hpp"
#include "alphanorm/linalg.hpp"

namespace alphanorm {

// Matrix: {"rows": m, "cols": n, "re": [[...]], "im": [[...]]}; "im" optional on input.
ComplexMatrix matrix_from_json(const std::string& text);
std::string matrix_to_json(const ComplexMatrix& m);

// Block matrix: {"row_dims": [...], "col_dims": [...], "blocks": [[<matrix>, ...], ...]}.
BlockMatrix block_matrix_from_json(const std::string& text);
std::string block_matrix_to_json(const BlockMatrix& t);

std::string bound_report_to_json(const BoundReport& r);

// Full-precision JSON; fail and error records carry their input.
std::string suite_report_to_json(const SuiteReport& r);

inline constexpr const char* kCsvHeader = "check_id,seed,theorem,alpha,p,s,lhs,rhs,slack,verdict";
void write_suite_csv(std::ostream& os, const SuiteReport& r);

std::string read_file(const std::string& path);

}  // namespace alphanorm
