#pragma once

// Derived-bracket operations built from the antibracket and an action, and checkers for the
// Lie algebroid (n = 2) and Courant algebroid (n = 3) axioms.

#include <cstdint>
#include <string>
#include <vector>

#include "bvdeform/models.hpp"
#include "bvdeform/pstructure.hpp"

namespace bvdeform {

/// Generators chosen as a local basis of sections.
struct SectionBasis {
  std::vector<GradedVar> generators;
  std::vector<Expr> elements;
  int degree = 0;
};

/// Throws std::invalid_argument when a generator does not have the given degree.
SectionBasis make_section_basis(std::vector<GradedVar> generators, int degree);

/// phi^i for n = 2, A_1^a and B_{1a} for n = 3 BF, A^a for n = 3 CS.
/// Throws std::invalid_argument for other models.
SectionBasis section_basis(const ModelSpec& spec);

/// ((S,e1),e2)
Expr derived_bracket(const PStructure& P, const Expr& S, const Expr& e1, const Expr& e2);
/// (e,(S,F)) for F depending on phi only; throws std::invalid_argument otherwise.
Expr anchor(const PStructure& P, const Expr& S, const Expr& e, const Expr& F);
/// (e1,e2)
Expr pairing(const PStructure& P, const Expr& e1, const Expr& e2);
/// (S,F)
Expr d_op(const PStructure& P, const Expr& S, const Expr& F);

struct TableEntry {
  std::string operation;  // "circ", "pairing" or "anchor"
  std::string left;
  std::string right;
  Expr value;
};

/// circ and pairing on all basis pairs, anchor of each basis element on each phi^i.
std::vector<TableEntry> operation_table(const ModelSpec& spec, const Expr& S);

struct AxiomReport {
  std::vector<LawResult> axioms;
  bool pass() const;
};

struct AxiomOptions {
  int test_functions = 20;  // random phi-polynomials of degree <= 3
  int random_sections = 4;  // Courant only: random phi-dependent combinations of the basis
  std::uint64_t seed = 0;
};

/// Antisymmetry, property 1 (anchor homomorphism) and property 2 (Leibniz) of a Lie
/// algebroid, for the action S1 with data substituted.
AxiomReport check_lie_algebroid(const PStructure& P, const Action& S1, const StructureData& data,
                                const SectionBasis& basis, const AxiomOptions& opt = {});

/// Properties 1-5 of a Courant algebroid; property 4 is read as
/// e1 o e2 + e2 o e1 = D<e1,e2>.
AxiomReport check_courant(const PStructure& P, const Action& S1, const StructureData& data,
                          const SectionBasis& basis, const AxiomOptions& opt = {});

}  // namespace bvdeform
