#pragma once

// Free differential graded algebra of worldsheet superfields and their form components:
// the exterior derivative d, the abelian BRST differential delta0, integration over the
// n-form part modulo d-exact terms, and the delta0-exactness statements used for S0 and S1.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bvdeform/graded_poly.hpp"
#include "bvdeform/models.hpp"

namespace bvdeform {

/// A generator of the free DGA: component X_form of superfield `field`_index (form = -1 for
/// the superfield itself) of total degree `total`, or its image dX when `differential`.
struct DgaGen {
  std::string field;
  int index = 0;
  int form = -1;
  int total = 0;
  bool differential = false;

  bool superfield() const { return form < 0; }
  int total_degree() const { return total + (differential ? 1 : 0); }
  int form_degree() const { return superfield() ? 0 : form + (differential ? 1 : 0); }
  bool odd() const { return is_odd(total_degree()); }
  /// The same generator without d.
  DgaGen underlying() const { return {field, index, form, total, false}; }

  bool operator==(const DgaGen& o) const {
    return field == o.field && index == o.index && form == o.form && differential == o.differential;
  }
  std::strong_ordering operator<=>(const DgaGen& o) const;
};

std::string to_string(const DgaGen& g);

/// Superfield generator of a target coordinate (form -1).
DgaGen superfield_of(const GradedVar& v);
/// Component of form k of a superfield generator.
DgaGen component(const DgaGen& superfield, int form);
DgaGen d_of(const DgaGen& g);

using DgaExpr = GradedPoly<DgaGen, CoeffPoly>;
using DgaMonomial = GradedMonomial<DgaGen>;

DgaExpr dga_var(const DgaGen& g);

/// Sum of the form degrees of a component monomial.
int form_degree(const DgaMonomial& m);

/// Dimension n (forms above n vanish), base dimension d (range of phi^j, on which every
/// structure function depends), and whether generators are superfields or components.
struct DgaContext {
  int n = 2;
  int base_dim = 1;
  bool superfield = false;
};

/// Odd derivation of total degree 1: X -> dX, dX -> 0, c(phi) -> d_j c dphi^j, with component
/// forms above n set to zero.
DgaExpr apply_d(const DgaExpr& f, const DgaContext& ctx);

/// Component BRST differential: X_k -> dX_{k-1}, X_0 -> 0, dX -> 0, c(phi_0) -> 0.
/// At superfield level it coincides with d.
DgaExpr apply_delta0(const DgaExpr& f, const DgaContext& ctx);

/// Form-degree-k part of a component expression.
DgaExpr form_part(const DgaExpr& f, int k);

/// Replaces each superfield by the sum of its components, Taylor-expanding coefficient
/// functions of phi around phi_0 in the higher phi components; forms above n are dropped.
DgaExpr expand_components(const DgaExpr& f, int n, int base_dim);

/// Target expression as a superfield density (no d).
DgaExpr to_superfield(const Expr& f);

struct IntegralClass {
  DgaExpr top;        // n-form part
  DgaExpr remainder;  // canonical representative modulo d-exact terms
  bool vanishes() const { return remainder.is_zero(); }
};

/// The n-form part of a component expression reduced modulo the image of d.
/// Throws std::invalid_argument unless all coefficients are rational constants.
IntegralClass integrate(const DgaExpr& f, int n);

/// Components F_0..F_n of one superfield: the forms 0..n each exactly once, one total degree.
/// Throws std::invalid_argument otherwise.
void validate_components(const std::vector<DgaGen>& comps, int n);

/// T with sum_p F_{n-p-1} dG_p = delta0 T modulo d-exact terms.
DgaExpr theorem1_witness(int n, const std::vector<DgaGen>& F, const std::vector<DgaGen>& G);

/// sum_{p=0}^{n-1} F_{n-p-1} dG_p
DgaExpr theorem1_sum(int n, const std::vector<DgaGen>& F, const std::vector<DgaGen>& G);

struct FirstOrderReport {
  bool pass = true;
  DgaExpr top;       // n-form part of delta0 S1
  DgaExpr witness;   // (n-1)-form part of S1; its d equals top when pass
  std::string detail;
};

/// delta0 S1 has a d-exact n-form part, hence integrates to zero.
FirstOrderReport first_order_check(const Action& S1, int n, int base_dim);

/// Kinetic density of S0 at superfield level.
DgaExpr kinetic_density(const KineticAction& k);

/// Functional antibracket of two superfield densities through variational derivatives.
DgaExpr superfield_bracket(const KineticAction& k, const DgaExpr& L, const DgaExpr& M);

/// (S0, X) for a local superfield expression X without d.
DgaExpr s0_action_on(const KineticAction& k, const DgaExpr& X);

struct KineticMasterReport {
  bool pass = true;
  DgaExpr density;  // superfield density of (S0,S0)
  IntegralClass integral;
};

/// (S0,S0) expanded in components and integrated.
KineticMasterReport kinetic_master(const KineticAction& k);

/// Random component expression with constant coefficients over the given generators.
DgaExpr random_component_expr(const std::vector<DgaGen>& gens, int n, std::mt19937_64& rng);

}  // namespace bvdeform
