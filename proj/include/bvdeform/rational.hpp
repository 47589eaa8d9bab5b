#pragma once

// Exact rational scalars and small dense matrices over them.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace bvdeform {

using Rational = mpq_class;

/// Canonical text form: "p" or "p/q" with q > 0.
std::string to_string(const Rational& r);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

using RationalMatrix = std::vector<std::vector<Rational>>;

bool is_square(const RationalMatrix& m);
Rational determinant(RationalMatrix m);
RationalMatrix transpose(const RationalMatrix& m);
/// Throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);
RationalMatrix identity_matrix(int size);

}  // namespace bvdeform
