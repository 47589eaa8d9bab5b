#pragma once

// Target-space graded expressions: sums of CoeffPoly x (monomial in fiber variables).
// Base coordinates phi^j never appear in monomials; they live in the coefficients.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bvdeform/coeff.hpp"
#include "bvdeform/graded_poly.hpp"
#include "bvdeform/grading.hpp"

namespace bvdeform {

using Expr = GradedPoly<GradedVar, CoeffPoly>;
using FiberMonomial = GradedMonomial<GradedVar>;

/// The coordinate v as an expression; base coordinates go into the coefficient ring.
Expr make_var(const GradedVar& v);
Expr make_const(const Rational& c);
Expr make_coeff(const CoeffPoly& c);

/// Throws std::invalid_argument when the two expressions use one variable with two degrees.
void check_compatible(const Expr& a, const Expr& b);

/// Checked sum and product.
Expr add(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);

Expr left_deriv(const GradedVar& x, const Expr& f);
Expr right_deriv(const Expr& f, const GradedVar& x);
Expr partial_base(int j, const Expr& f);

/// Replaces all structure-function symbols; throws std::out_of_range when one is unassigned.
Expr substitute(const Expr& f, const StructureData& data);

/// Total degree of a homogeneous expression; nullopt for mixed degrees.
std::optional<int> total_degree(const Expr& f);

/// Terms grouped per fiber monomial, printed as "coeff * monomial".
std::string to_text(const Expr& f);

}  // namespace bvdeform
