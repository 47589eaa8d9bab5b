#include "bvdeform/expr.hpp"

#include <map>
#include <stdexcept>

namespace bvdeform {

Expr make_var(const GradedVar& v) {
  if (v.is_base()) {
    if (v.degree.total != 0) throw std::invalid_argument("base coordinates have degree 0");
    return Expr::constant(CoeffPoly::base_var(v.index));
  }
  return Expr::generator(v);
}

Expr make_const(const Rational& c) { return Expr::constant(CoeffPoly::constant(c)); }

Expr make_coeff(const CoeffPoly& c) { return Expr::constant(c); }

void check_compatible(const Expr& a, const Expr& b) {
  std::map<std::pair<std::string, int>, int> seen;
  auto scan = [&](const Expr& e) {
    for (const auto& [m, c] : e.terms())
      for (const auto& [v, k] : m.factors) {
        auto [it, inserted] = seen.emplace(std::make_pair(v.block, v.index), v.degree.total);
        if (!inserted && it->second != v.degree.total)
          throw std::invalid_argument("expressions from different model contexts: variable " +
                                      to_string(v) + " has degrees " + std::to_string(it->second) +
                                      " and " + std::to_string(v.degree.total));
      }
  };
  scan(a);
  scan(b);
}

Expr add(const Expr& a, const Expr& b) {
  check_compatible(a, b);
  return a + b;
}

Expr mul(const Expr& a, const Expr& b) {
  check_compatible(a, b);
  return a * b;
}

Expr partial_base(int j, const Expr& f) {
  return f.map_coefficients([j](const CoeffPoly& c) { return c.partial(j); });
}

Expr left_deriv(const GradedVar& x, const Expr& f) {
  if (x.is_base()) return partial_base(x.index, f);
  return f.left_deriv(x);
}

Expr right_deriv(const Expr& f, const GradedVar& x) {
  if (x.is_base()) return partial_base(x.index, f);
  return f.right_deriv(x);
}

Expr substitute(const Expr& f, const StructureData& data) {
  return f.map_coefficients([&data](const CoeffPoly& c) { return c.substitute(data); });
}

std::optional<int> total_degree(const Expr& f) { return f.homogeneous_degree(); }

std::string to_text(const Expr& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    if (m.empty())
      out += "(" + c.to_string() + ")";
    else
      out += "(" + c.to_string() + ")*" + m.to_string();
  }
  return out;
}

}  // namespace bvdeform
