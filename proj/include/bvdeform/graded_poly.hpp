#pragma once

// Graded-commutative polynomials: x*y = (-1)^{|x||y|} y*x, odd generators square to zero.
// Shared by target-space expressions (Expr) and the worldsheet algebra (DgaExpr).

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bvdeform/coeff.hpp"
#include "bvdeform/rational.hpp"

namespace bvdeform {

namespace detail {
inline bool coeff_is_zero(const Rational& r) { return r == 0; }
inline bool coeff_is_zero(const CoeffPoly& p) { return p.is_zero(); }
inline Rational scaled(const Rational& r, int s) { return s > 0 ? r : Rational(-r); }
inline CoeffPoly scaled(const CoeffPoly& p, int s) { return s > 0 ? p : -p; }
inline std::string coeff_text(const Rational& r) { return to_string(r); }
inline std::string coeff_text(const CoeffPoly& p) { return p.to_string(); }
template <class Var>
std::string var_text(const Var& v) {
  return to_string(v);
}
}  // namespace detail

/// Ordered product of generators in canonical order; odd generators have exponent 1.
template <class Var>
struct GradedMonomial {
  std::vector<std::pair<Var, int>> factors;

  int degree() const {
    int d = 0;
    for (const auto& [v, e] : factors) d += v.total_degree() * e;
    return d;
  }
  bool empty() const { return factors.empty(); }
  bool contains(const Var& v) const {
    for (const auto& [u, e] : factors)
      if (u == v) return true;
    return false;
  }
  bool operator==(const GradedMonomial&) const = default;
  auto operator<=>(const GradedMonomial& o) const {
    if (auto c = factors.size() <=> o.factors.size(); c != 0) return c;
    return factors <=> o.factors;
  }
  std::string to_string() const {
    std::string out;
    for (const auto& [v, e] : factors) {
      if (!out.empty()) out += '*';
      out += detail::var_text(v);
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
  }
};

/// Canonical product a*b with its Koszul sign, or nullopt when an odd generator repeats.
template <class Var>
std::optional<std::pair<int, GradedMonomial<Var>>> multiply(const GradedMonomial<Var>& a,
                                                            const GradedMonomial<Var>& b) {
  GradedMonomial<Var> out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  int odd_left_in_a = 0;
  for (const auto& [v, e] : a.factors)
    if (v.odd()) ++odd_left_in_a;
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
      if (a.factors[i].first.odd()) --odd_left_in_a;
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
      if (b.factors[j].first.odd() && odd_left_in_a % 2 != 0) sign = -sign;
      out.factors.push_back(b.factors[j++]);
    } else {
      if (a.factors[i].first.odd()) return std::nullopt;
      out.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
      ++i;
      ++j;
    }
  }
  return std::make_pair(sign, std::move(out));
}

template <class Var, class Coeff>
class GradedPoly {
 public:
  using Monomial = GradedMonomial<Var>;
  using Terms = std::map<Monomial, Coeff>;

  GradedPoly() = default;

  static GradedPoly generator(const Var& v) {
    Monomial m;
    m.factors.emplace_back(v, 1);
    return term(std::move(m), Coeff(Rational(1)));
  }
  static GradedPoly constant(const Coeff& c) { return term(Monomial{}, c); }
  static GradedPoly term(Monomial m, const Coeff& c) {
    GradedPoly p;
    p.add_term(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Coeff& c) {
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  GradedPoly& operator+=(const GradedPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedPoly& operator-=(const GradedPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, detail::scaled(c, -1));
    return *this;
  }
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  GradedPoly operator-() const {
    GradedPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, detail::scaled(c, -1));
    return out;
  }

  /// Multiplies every coefficient by an even (degree 0) scalar.
  GradedPoly scaled_by(const Coeff& s) const {
    GradedPoly out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return out;
  }

  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        auto prod = multiply(ma, mb);
        if (!prod) continue;
        out.add_term(prod->second, detail::scaled(ca * cb, prod->first));
      }
    return out;
  }

  /// Left derivative: commute x to the front, then strip it.
  GradedPoly left_deriv(const Var& x) const { return strip(x, true); }
  /// Right derivative: commute x to the back, then strip it.
  GradedPoly right_deriv(const Var& x) const { return strip(x, false); }

  /// Total degree when every term has the same degree; nullopt otherwise (0 for zero).
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return 0;
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) return std::nullopt;
    return d;
  }

  template <class Fn>
  GradedPoly map_coefficients(Fn&& fn) const {
    GradedPoly out;
    for (const auto& [m, c] : terms_) out.add_term(m, fn(c));
    return out;
  }

  bool operator==(const GradedPoly&) const = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string ct = detail::coeff_text(c);
      if (m.empty()) {
        out += "(" + ct + ")";
      } else {
        out += "(" + ct + ")*" + m.to_string();
      }
    }
    return out;
  }

 private:
  GradedPoly strip(const Var& x, bool from_left) const {
    GradedPoly out;
    for (const auto& [m, c] : terms_) {
      std::size_t pos = m.factors.size();
      for (std::size_t k = 0; k < m.factors.size(); ++k)
        if (m.factors[k].first == x) pos = k;
      if (pos == m.factors.size()) continue;
      int sign = 1;
      int mult = 1;
      if (x.odd()) {
        int passed = 0;
        if (from_left) {
          for (std::size_t k = 0; k < pos; ++k)
            if (m.factors[k].first.odd()) ++passed;
        } else {
          for (std::size_t k = pos + 1; k < m.factors.size(); ++k)
            if (m.factors[k].first.odd()) ++passed;
        }
        if (passed % 2 != 0) sign = -1;
      } else {
        mult = m.factors[pos].second;
      }
      Monomial r = m;
      if (r.factors[pos].second == 1)
        r.factors.erase(r.factors.begin() + static_cast<long>(pos));
      else
        r.factors[pos].second -= 1;
      out.add_term(r, detail::scaled(c * Coeff(Rational(mult)), sign));
    }
    return out;
  }

  Terms terms_;
};

}  // namespace bvdeform
