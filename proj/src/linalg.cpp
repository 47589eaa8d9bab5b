#include "bvdeform/linalg.hpp"

namespace bvdeform {

SparseVec RowSpace::reduce(SparseVec v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const Rational factor = it->second;
    for (const auto& [c, x] : row->second) {
      Rational& slot = v[c];
      slot -= factor * x;
      if (slot == 0) v.erase(c);
    }
    it = v.upper_bound(col);
  }
  return v;
}

bool RowSpace::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  const Rational lead = r.begin()->second;
  for (auto& [c, x] : r) x /= lead;
  rows_.emplace(r.begin()->first, std::move(r));
  return true;
}

std::size_t CoeffBasis::index(const CoeffMonomial& m) {
  auto [it, inserted] = ids_.emplace(m, monomials_.size());
  if (inserted) monomials_.push_back(m);
  return it->second;
}

SparseVec CoeffBasis::vectorize(const CoeffPoly& p) {
  SparseVec v;
  for (const auto& [m, c] : p.terms()) v[index(m)] = c;
  return v;
}

CoeffPoly CoeffBasis::polynomial(const SparseVec& v) const {
  CoeffPoly out;
  for (const auto& [i, c] : v) out += CoeffPoly::monomial(monomials_.at(i), c);
  return out;
}

}  // namespace bvdeform
