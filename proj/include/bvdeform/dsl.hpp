#pragma once

// Line-oriented model files:
//
//   [model]
//   n = 3
//   flavor = bf            # or cs_bf
//   d = 2
//   block 1 2              # p rank
//   cs_rank = 2            # cs_bf only
//   metric = 1 0 ; 0 1     # rows separated by ';'
//   [symmetry]
//   f4 antisym 1 2         # slots (1-based) asserted to share a declared group
//   [data]
//   f1[2,1] = -phi1 + 1/2*phi2^2

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bvdeform/models.hpp"

namespace bvdeform {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct SymmetryDecl {
  std::string family;
  bool antisymmetric = true;
  std::vector<int> slots;  // 1-based
  bool operator==(const SymmetryDecl&) const = default;
};

struct ModelFile {
  ModelSpec spec;
  std::vector<SymmetryDecl> symmetries;
  bool has_data = false;
  StructureData data;
};

/// Throws ParseError with 1-based line and column.
ModelFile parse_model(std::string_view text);

/// Canonical text; parse_model(print_model(m)) reproduces m.
std::string print_model(const ModelFile& m);

using FamilyResolver = std::function<FamilyPtr(const std::string&)>;

/// Polynomial over phiN, rationals and resolved symbols such as f4[1,2,1|2].
/// Throws ParseError (line 1) on malformed text or an unknown family.
CoeffPoly parse_polynomial(std::string_view text, const FamilyResolver& resolve);

/// Resolver over the families of the model's generic ansatz.
FamilyResolver ansatz_resolver(const S1Ansatz& s1);

}  // namespace bvdeform
