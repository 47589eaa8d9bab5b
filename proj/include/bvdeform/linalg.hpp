#pragma once

// Exact sparse row reduction over Q, used to decide linear-span questions.

#include <cstddef>
#include <map>
#include <vector>

#include "bvdeform/coeff.hpp"
#include "bvdeform/rational.hpp"

namespace bvdeform {

using SparseVec = std::map<std::size_t, Rational>;

/// Row echelon form built incrementally; each stored row has leading entry 1.
class RowSpace {
 public:
  /// Adds v; returns false when v already lies in the span.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  /// Remainder of v after elimination against the stored rows.
  SparseVec reduce(SparseVec v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<std::size_t, SparseVec> rows_;  // pivot column -> row
};

/// Assigns column numbers to coefficient monomials on first sight.
class CoeffBasis {
 public:
  std::size_t index(const CoeffMonomial& m);
  const CoeffMonomial& at(std::size_t i) const { return monomials_.at(i); }
  std::size_t size() const { return monomials_.size(); }
  SparseVec vectorize(const CoeffPoly& p);
  CoeffPoly polynomial(const SparseVec& v) const;

 private:
  std::map<CoeffMonomial, std::size_t> ids_;
  std::vector<CoeffMonomial> monomials_;
};

}  // namespace bvdeform
