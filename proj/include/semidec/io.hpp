#pragma once

#include "semidec/int_matrix.hpp"

#include <iosfwd>
#include <string>

namespace semidec {

/// Matrix interchange format: two dimension tokens "rows cols" followed by
/// rows*cols signed decimal integers in row-major order, separated by
/// arbitrary whitespace. Malformed input raises parse_error with line and
/// column diagnostics.
IntMatrix parse_mat(std::istream& in, const std::string& source = "<stream>");
IntMatrix parse_mat_file(const std::string& path);

/// Moduli format: a count h followed by h positive integers, attached to
/// the last h rows of the accompanying matrix.
IntVec parse_moduli(std::istream& in, const std::string& source = "<stream>");
IntVec parse_moduli_file(const std::string& path);

void write_mat(std::ostream& out, const IntMatrix& m);

} // namespace semidec
