#pragma once

// Model specifications, the abelian kinetic action S0 and the generic deformation ansatz S1.

#include <optional>
#include <string>
#include <vector>

#include "bvdeform/expr.hpp"
#include "bvdeform/pstructure.hpp"

namespace bvdeform {

enum class Flavor { bf, cs_bf };

std::string to_string(Flavor f);
/// "bf" or "cs_bf"; throws std::invalid_argument otherwise.
Flavor parse_flavor(const std::string& text);

/// E_p[p] + E_p*[n-p-1] with rank r_p, 1 <= p.
struct BfBlock {
  int p = 1;
  int rank = 1;
  bool operator==(const BfBlock&) const = default;
};

/// E[(n-1)/2] with fiber metric k.
struct CsBlock {
  int rank = 1;
  RationalMatrix k;
  bool operator==(const CsBlock&) const = default;
};

struct ModelSpec {
  int n = 2;
  int d = 1;
  Flavor flavor = Flavor::bf;
  std::vector<BfBlock> bf_blocks;
  std::optional<CsBlock> cs_block;
  bool operator==(const ModelSpec&) const = default;
};

/// Throws std::invalid_argument describing the first violated rule.
void validate(const ModelSpec& spec);

std::string a_label(int p);
std::string b_label(int n, int p);
std::string self_label(int n);

/// The P-structure of the model's target bundle.
PStructure make_pstructure(const ModelSpec& spec);

struct Action {
  Expr expr;
  int declared_total_degree = 0;
};

/// sign * B_{n-p-1,a} dA_p^a; for p = 0 the A-block is phi.
struct KineticPair {
  int p = 0;
  std::string a_block;
  std::string b_block;
  int rank = 0;
  int sign = 1;
};

/// 1/2 g_ab A^a dA^b with g = (k^T)^{-1}, k the metric of the antibracket.
struct KineticSelf {
  std::string block;
  RationalMatrix k;
  RationalMatrix g;
};

struct KineticAction {
  int n = 0;
  std::vector<KineticPair> pairs;
  std::vector<KineticSelf> self_blocks;
};

struct S0 {
  Action action;          // zero at target level
  KineticAction kinetic;  // the worldsheet density
};

S0 build_S0(const ModelSpec& spec);

/// One structure-function family of the ansatz and the fiber block behind each slot.
struct AnsatzFamily {
  FamilyPtr family;
  std::vector<std::string> slot_blocks;
  std::vector<int> slot_degrees;
  std::vector<int> slot_ranges;
  Rational normalization;  // 1 / prod(m_b!)
};

struct S1Ansatz {
  Action action;
  std::vector<AnsatzFamily> families;
  /// n = 1: no fiber coordinate of positive degree, so no nontrivial deformation.
  bool trivial_expected = false;
};

/// Every fiber monomial of total degree n, one structure-function family per block multiset,
/// normalized by 1/prod(m_b!) and summed over all index tuples.
S1Ansatz build_S1_generic(const ModelSpec& spec);

struct DegreeReport {
  bool pass = true;
  std::vector<std::string> violations;
};

DegreeReport validate_degree(const Action& a, const ModelSpec& spec);

/// Looks up a family of the ansatz by name; nullptr when absent.
const AnsatzFamily* find_family(const S1Ansatz& s1, const std::string& name);

}  // namespace bvdeform
