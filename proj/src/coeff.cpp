#include "bvdeform/coeff.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bvdeform/grading.hpp"

namespace bvdeform {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

// Sorts `values` ascending, returning the parity of the permutation (0 even, 1 odd).
int sort_with_parity(std::vector<int>& values) {
  int swaps = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    for (std::size_t j = i; j > 0 && values[j - 1] > values[j]; --j) {
      std::swap(values[j - 1], values[j]);
      ++swaps;
    }
  return swaps % 2;
}

}  // namespace

FamilyPtr make_family(std::string name, std::vector<IndexPosition> slots,
                      std::vector<IndexGroup> groups) {
  for (auto& g : groups) {
    std::sort(g.positions.begin(), g.positions.end());
    for (int p : g.positions)
      if (p < 0 || p >= static_cast<int>(slots.size()))
        throw std::invalid_argument("symbol family " + name + ": group slot out of range");
  }
  return std::make_shared<const SymbolFamily>(
      SymbolFamily{std::move(name), std::move(slots), std::move(groups)});
}

// ---------------------------------------------------------------------------
// CoeffSymbol

std::optional<std::pair<int, CoeffSymbol>> CoeffSymbol::make(FamilyPtr family,
                                                             std::vector<int> indices,
                                                             std::vector<int> deriv) {
  if (static_cast<int>(indices.size()) != family->arity())
    throw std::invalid_argument("symbol " + family->name + ": expected " +
                                std::to_string(family->arity()) + " indices, got " +
                                std::to_string(indices.size()));
  int sign = 1;
  for (const auto& group : family->groups) {
    std::vector<int> vals;
    vals.reserve(group.positions.size());
    for (int p : group.positions) vals.push_back(indices[p]);
    int par = sort_with_parity(vals);
    if (group.antisymmetric) {
      if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) return std::nullopt;
      if (par) sign = -sign;
    }
    for (std::size_t k = 0; k < vals.size(); ++k) indices[group.positions[k]] = vals[k];
  }
  std::sort(deriv.begin(), deriv.end());
  return std::make_pair(sign, CoeffSymbol(std::move(family), std::move(indices), std::move(deriv)));
}

CoeffSymbol CoeffSymbol::with_derivative(int j) const {
  std::vector<int> d = deriv_;
  d.insert(std::upper_bound(d.begin(), d.end(), j), j);
  return CoeffSymbol(family_, indices_, std::move(d));
}

CoeffSymbol CoeffSymbol::without_derivatives() const { return CoeffSymbol(family_, indices_, {}); }

std::string CoeffSymbol::to_string() const {
  std::string out = family_->name + "[" + join_ints(indices_);
  if (!deriv_.empty()) out += "|" + join_ints(deriv_);
  return out + "]";
}

std::strong_ordering CoeffSymbol::operator<=>(const CoeffSymbol& o) const {
  if (auto c = family_->name <=> o.family_->name; c != 0) return c;
  if (auto c = indices_ <=> o.indices_; c != 0) return c;
  return deriv_ <=> o.deriv_;
}

// ---------------------------------------------------------------------------
// CoeffMonomial

std::strong_ordering CoeffMonomial::operator<=>(const CoeffMonomial& o) const {
  // Total degree first so printed polynomials read low-to-high.
  auto degree = [](const CoeffMonomial& m) {
    int d = static_cast<int>(m.symbols.size());
    for (const auto& [j, e] : m.base) d += e;
    return d;
  };
  if (auto c = degree(*this) <=> degree(o); c != 0) return c;
  if (auto c = symbols <=> o.symbols; c != 0) return c;
  return base <=> o.base;
}

std::string CoeffMonomial::to_string() const {
  std::string out;
  for (const auto& s : symbols) {
    if (!out.empty()) out += '*';
    out += s.to_string();
  }
  for (const auto& [j, e] : base) {
    if (!out.empty()) out += '*';
    out += "phi" + std::to_string(j);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

CoeffMonomial operator*(const CoeffMonomial& a, const CoeffMonomial& b) {
  CoeffMonomial m;
  m.symbols.reserve(a.symbols.size() + b.symbols.size());
  std::merge(a.symbols.begin(), a.symbols.end(), b.symbols.begin(), b.symbols.end(),
             std::back_inserter(m.symbols));
  auto i = a.base.begin();
  auto j = b.base.begin();
  while (i != a.base.end() || j != b.base.end()) {
    if (j == b.base.end() || (i != a.base.end() && i->first < j->first)) {
      m.base.push_back(*i++);
    } else if (i == a.base.end() || j->first < i->first) {
      m.base.push_back(*j++);
    } else {
      m.base.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// StructureData

void StructureData::assign(const FamilyPtr& family, const std::vector<int>& indices,
                           const CoeffPoly& value) {
  if (value.has_symbols())
    throw std::invalid_argument("value assigned to " + family->name +
                                " must be a polynomial in phi only");
  auto normal = CoeffSymbol::make(family, indices);
  if (!normal) {
    if (!value.is_zero())
      throw std::invalid_argument("symmetry violation: " + family->name + "[" +
                                  join_ints(indices) + "] is forced to vanish");
    return;
  }
  CoeffPoly v = value * Rational(normal->first);
  auto [it, inserted] = values_.emplace(normal->second, v);
  if (!inserted && !(it->second == v))
    throw std::invalid_argument("symmetry violation: conflicting values for " +
                                normal->second.to_string());
}

const CoeffPoly* StructureData::find(const CoeffSymbol& symbol) const {
  auto it = values_.find(symbol);
  return it == values_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// CoeffPoly

CoeffPoly CoeffPoly::constant(const Rational& c) {
  CoeffPoly p;
  if (c != 0) p.terms_.emplace(CoeffMonomial{}, c);
  return p;
}

CoeffPoly CoeffPoly::base_var(int j) {
  CoeffMonomial m;
  m.base.emplace_back(j, 1);
  return monomial(std::move(m), 1);
}

CoeffPoly CoeffPoly::symbol(const FamilyPtr& family, std::vector<int> indices,
                            std::vector<int> deriv) {
  auto normal = CoeffSymbol::make(family, std::move(indices), std::move(deriv));
  if (!normal) return {};
  CoeffMonomial m;
  m.symbols.push_back(normal->second);
  return monomial(std::move(m), normal->first);
}

CoeffPoly CoeffPoly::monomial(CoeffMonomial m, const Rational& c) {
  CoeffPoly p;
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool CoeffPoly::has_symbols() const {
  for (const auto& [m, c] : terms_)
    if (!m.symbols.empty()) return true;
  return false;
}

std::optional<Rational> CoeffPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
  return std::nullopt;
}

void CoeffPoly::add_term(const CoeffMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CoeffPoly& CoeffPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
  CoeffPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

CoeffPoly CoeffPoly::operator-() const {
  CoeffPoly out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

CoeffPoly CoeffPoly::partial(int j) const {
  CoeffPoly out;
  for (const auto& [m, c] : terms_) {
    // Leibniz over symbol factors.
    for (std::size_t k = 0; k < m.symbols.size(); ++k) {
      if (k > 0 && m.symbols[k] == m.symbols[k - 1]) continue;
      std::size_t mult = 1;
      while (k + mult < m.symbols.size() && m.symbols[k + mult] == m.symbols[k]) ++mult;
      CoeffMonomial d = m;
      d.symbols.erase(d.symbols.begin() + static_cast<long>(k));
      CoeffSymbol ds = m.symbols[k].with_derivative(j);
      d.symbols.insert(std::upper_bound(d.symbols.begin(), d.symbols.end(), ds), ds);
      out.add_term(d, c * static_cast<long>(mult));
    }
    for (std::size_t k = 0; k < m.base.size(); ++k) {
      if (m.base[k].first != j) continue;
      CoeffMonomial d = m;
      int e = d.base[k].second;
      if (e == 1)
        d.base.erase(d.base.begin() + static_cast<long>(k));
      else
        d.base[k].second = e - 1;
      out.add_term(d, c * e);
    }
  }
  return out;
}

CoeffPoly CoeffPoly::substitute(const StructureData& data) const {
  std::map<CoeffSymbol, CoeffPoly> cache;
  auto value_of = [&](const CoeffSymbol& s) -> const CoeffPoly& {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    const CoeffPoly* base = data.find(s.without_derivatives());
    if (!base) throw std::out_of_range("no structure data assigned to " + s.without_derivatives().to_string());
    CoeffPoly v = *base;
    for (int j : s.deriv()) v = v.partial(j);
    return cache.emplace(s, std::move(v)).first->second;
  };
  CoeffPoly out;
  for (const auto& [m, c] : terms_) {
    CoeffMonomial rest;
    rest.base = m.base;
    CoeffPoly term = monomial(rest, c);
    for (const auto& s : m.symbols) {
      term = term * value_of(s);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

Rational CoeffPoly::evaluate(const PointAssignment& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (const auto& s : m.symbols) {
      auto it = point.symbols.find(s);
      if (it == point.symbols.end()) throw std::out_of_range("no value for symbol " + s.to_string());
      v *= it->second;
    }
    for (const auto& [j, e] : m.base) {
      auto it = point.base.find(j);
      if (it == point.base.end()) throw std::out_of_range("no value for phi" + std::to_string(j));
      for (int k = 0; k < e; ++k) v *= it->second;
    }
    total += v;
  }
  return total;
}

std::vector<CoeffSymbol> CoeffPoly::symbols() const {
  std::set<CoeffSymbol> seen;
  for (const auto& [m, c] : terms_) seen.insert(m.symbols.begin(), m.symbols.end());
  return {seen.begin(), seen.end()};
}

std::string CoeffPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += bvdeform::to_string(mag);
    } else {
      if (mag != 1) out += bvdeform::to_string(mag) + "*";
      out += m.to_string();
    }
  }
  return out;
}

}  // namespace bvdeform
