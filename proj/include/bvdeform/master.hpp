#pragma once

// The g^2 part (S1,S1) of the classical master equation, the identity system it imposes on
// the structure functions, and exact span comparison of identity systems.

#include <optional>
#include <string>
#include <vector>

#include "bvdeform/models.hpp"
#include "bvdeform/pstructure.hpp"

namespace bvdeform {

struct Identity {
  std::string tag;      // fiber monomial, or free-index assignment for transcribed sets
  CoeffPoly equation;   // = 0
};

struct IdentitySet {
  std::string provenance;              // "extracted" or "transcribed:<which>" or a file name
  std::vector<std::string> alphabet;   // structure-function family names, sorted
  std::vector<Identity> equations;
};

/// (S1,S1). Throws std::invalid_argument unless S1 is homogeneous of degree n.
Expr expand_master(const PStructure& P, const Action& S1);

/// One equation per fiber monomial of (S1,S1).
IdentitySet extract_identities(const PStructure& P, const S1Ansatz& S1);

enum class PaperIdentities { n2_jacobi, n3_bf, n3_cs };

/// "n2_jacobi", "n3_bf", "n3_cs"; throws std::invalid_argument otherwise.
PaperIdentities parse_paper_identities(const std::string& name);
std::string to_string(PaperIdentities which);

/// Which displayed set applies to the model; throws std::invalid_argument when none does.
PaperIdentities paper_identities_for(const ModelSpec& spec);

/// How an antisymmetrization bracket over index groups expands.
/// shuffle: one term per inequivalent placement, Phi_[ab] = Phi_ab - Phi_ba.
/// full: sum over every permutation of the bracketed indices.
enum class Antisymmetrization { shuffle, full };

/// The displayed identities expanded over explicit index values of the model.
IdentitySet transcribe_paper_identities(PaperIdentities which, const ModelSpec& spec,
                                        Antisymmetrization convention = Antisymmetrization::shuffle);

enum class SpanRelation { equal, a_in_b, b_in_a, incomparable };
std::string to_string(SpanRelation r);

struct SpanComparison {
  SpanRelation relation = SpanRelation::equal;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  std::optional<Identity> witness;  // an equation outside the other span
  std::string witness_side;         // "a" or "b"
};

/// Exact comparison of the Q-spans. Throws std::invalid_argument on an alphabet mismatch.
SpanComparison compare_identity_spans(const IdentitySet& a, const IdentitySet& b);

struct VerifyReport {
  bool pass = true;
  std::vector<std::pair<std::string, CoeffPoly>> residuals;  // monomial, coefficient
};

/// Substitutes data into (S1,S1). Throws std::out_of_range naming a missing symbol.
VerifyReport verify_structure_data(const PStructure& P, const Action& S1, const StructureData& data);

}  // namespace bvdeform
