#pragma once

// Coefficient ring of graded expressions: polynomials over rationals in explicit base
// coordinates phi^j and opaque structure functions f(phi) with formal derivatives.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bvdeform/rational.hpp"

namespace bvdeform {

enum class IndexPosition { lower, upper };

/// A set of index slots that is totally symmetric or totally antisymmetric.
struct IndexGroup {
  std::vector<int> positions;  // 0-based slots, ascending
  bool antisymmetric = true;
  bool operator==(const IndexGroup&) const = default;
};

/// Declaration of an indexed structure function such as f4_{ab}^c.
struct SymbolFamily {
  std::string name;
  std::vector<IndexPosition> slots;
  std::vector<IndexGroup> groups;

  int arity() const { return static_cast<int>(slots.size()); }
  bool operator==(const SymbolFamily&) const = default;
};

using FamilyPtr = std::shared_ptr<const SymbolFamily>;

FamilyPtr make_family(std::string name, std::vector<IndexPosition> slots,
                      std::vector<IndexGroup> groups = {});

/// One component of a structure function, possibly with formal partial derivatives.
/// Always stored in normal form: group indices ascending, derivative indices ascending.
class CoeffSymbol {
 public:
  /// Normalizes the index tuple. Returns the sign absorbed by the normalization,
  /// or nullopt when an antisymmetric group has a repeated index.
  static std::optional<std::pair<int, CoeffSymbol>> make(FamilyPtr family, std::vector<int> indices,
                                                         std::vector<int> deriv = {});

  const SymbolFamily& family() const { return *family_; }
  const FamilyPtr& family_ptr() const { return family_; }
  const std::string& name() const { return family_->name; }
  const std::vector<int>& indices() const { return indices_; }
  const std::vector<int>& deriv() const { return deriv_; }

  CoeffSymbol with_derivative(int j) const;
  CoeffSymbol without_derivatives() const;

  /// "f4[1,2,1]" or "f4[1,2,1|2]" with derivative indices after the bar.
  std::string to_string() const;

  bool operator==(const CoeffSymbol& o) const {
    return family_->name == o.family_->name && indices_ == o.indices_ && deriv_ == o.deriv_;
  }
  std::strong_ordering operator<=>(const CoeffSymbol& o) const;

 private:
  CoeffSymbol(FamilyPtr f, std::vector<int> i, std::vector<int> d)
      : family_(std::move(f)), indices_(std::move(i)), deriv_(std::move(d)) {}

  FamilyPtr family_;
  std::vector<int> indices_;
  std::vector<int> deriv_;
};

/// Product of structure-function symbols (with repetition) and a monomial in phi.
struct CoeffMonomial {
  std::vector<CoeffSymbol> symbols;          // sorted, repeats allowed
  std::vector<std::pair<int, int>> base;     // (phi index, exponent), index ascending

  bool operator==(const CoeffMonomial&) const = default;
  std::strong_ordering operator<=>(const CoeffMonomial& o) const;
  bool is_one() const { return symbols.empty() && base.empty(); }
  std::string to_string() const;
};

CoeffMonomial operator*(const CoeffMonomial& a, const CoeffMonomial& b);

class CoeffPoly;

/// Explicit values for structure functions: each symbol (without derivatives) maps to a
/// polynomial in phi. Keys are normal-form symbols.
class StructureData {
 public:
  /// Assigns value to the component named by (family, indices), honouring declared
  /// symmetries. Throws std::invalid_argument on a symmetry violation, i.e. a conflicting
  /// reassignment or a nonzero value for a component forced to vanish.
  void assign(const FamilyPtr& family, const std::vector<int>& indices, const CoeffPoly& value);

  const CoeffPoly* find(const CoeffSymbol& symbol) const;
  const std::map<CoeffSymbol, CoeffPoly>& values() const { return values_; }
  bool empty() const { return values_.empty(); }

 private:
  std::map<CoeffSymbol, CoeffPoly> values_;
};

/// A rational point: values for base coordinates and for every symbol that occurs.
struct PointAssignment {
  std::map<int, Rational> base;
  std::map<CoeffSymbol, Rational> symbols;
};

class CoeffPoly {
 public:
  using Terms = std::map<CoeffMonomial, Rational>;

  CoeffPoly() = default;
  explicit CoeffPoly(const Rational& c) { if (c != 0) terms_.emplace(CoeffMonomial{}, c); }
  static CoeffPoly constant(const Rational& c);
  static CoeffPoly base_var(int j);
  /// Normalized symbol; zero when the index tuple is forced to vanish.
  static CoeffPoly symbol(const FamilyPtr& family, std::vector<int> indices,
                          std::vector<int> deriv = {});
  static CoeffPoly monomial(CoeffMonomial m, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_symbols() const;
  std::optional<Rational> constant_value() const;
  std::size_t size() const { return terms_.size(); }

  CoeffPoly& operator+=(const CoeffPoly& o);
  CoeffPoly& operator-=(const CoeffPoly& o);
  CoeffPoly& operator*=(const Rational& c);
  friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
  friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
  friend CoeffPoly operator*(CoeffPoly a, const Rational& c) { return a *= c; }
  friend CoeffPoly operator*(const Rational& c, CoeffPoly a) { return a *= c; }
  friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b);
  CoeffPoly operator-() const;
  bool operator==(const CoeffPoly&) const = default;

  /// Formal d/dphi^j: appends j to symbol derivatives, differentiates explicit phi powers.
  CoeffPoly partial(int j) const;

  /// Replaces every symbol by its assigned polynomial (derivatives taken on the value).
  /// Throws std::out_of_range naming the first unassigned symbol.
  CoeffPoly substitute(const StructureData& data) const;

  /// Exact value at a rational point. Throws std::out_of_range on a missing value.
  Rational evaluate(const PointAssignment& point) const;

  /// Distinct symbols occurring in any term.
  std::vector<CoeffSymbol> symbols() const;

  std::string to_string() const;

 private:
  void add_term(const CoeffMonomial& m, const Rational& c);
  Terms terms_;
};

}  // namespace bvdeform
