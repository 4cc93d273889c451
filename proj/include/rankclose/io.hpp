#pragma once

// Text formats. Indices are 1-based wherever a human reads them; these two
// formats are positional so no indices appear.
//
//   mask:          one line per row, characters '0'/'1', no separators.
//   masked matrix: CSV, one row per line, '?' or an empty field for an
//                  unobserved cell, '.' decimal point, exponents accepted.

#include "rankclose/mask.hpp"

#include <string>
#include <string_view>

namespace rankclose {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

Mask parse_mask(std::string_view text);
std::string serialize_mask(const Mask &mask);

MaskedMatrix parse_masked_matrix(std::string_view text);
std::string serialize_masked_matrix(const MaskedMatrix &mm);

/// A fully observed CSV. Throws ParseError if any cell is a hole.
DenseMatrix parse_dense(std::string_view text);
std::string serialize_dense(const DenseMatrix &a);

} // namespace rankclose
