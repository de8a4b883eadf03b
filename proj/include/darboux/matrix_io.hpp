#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "darboux/matrix.hpp"

namespace darboux {

/// Complex scalar as `re+imi` / `re-imi`, 17 significant digits, locale independent.
std::string format_complex(Complex z);
/// Inverse of format_complex; a bare real is accepted too. Throws ParameterError on malformed or non-finite input.
Complex parse_complex(std::string_view text);
std::string format_real(double x);

/// Matrix file block: a line holding n, then n lines of n complex entries.
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);

Matrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const Matrix& m);

/// Whitespace separated complex entries on one line.
std::string format_vector(const StateVector& v);
StateVector parse_vector(std::string_view text);

}  // namespace darboux
