#pragma once

// Expected derived-bracket tables of the three-dimensional models, written line by line
// from the displayed formulas. Each function returns the entries that disagree.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "bvdeform/algebroid.hpp"

namespace tables {

using namespace bvdeform;
using Key = std::tuple<std::string, std::string, std::string>;

inline std::map<Key, Expr> table_map(const ModelSpec& spec, const Expr& S) {
  std::map<Key, Expr> out;
  for (const auto& e : operation_table(spec, S)) out[{e.operation, e.left, e.right}] = e.value;
  return out;
}

inline Expr v(const std::string& block, int i) { return make_var({block, i, Degree{1}}); }

inline CoeffPoly sym(const S1Ansatz& s1, const std::string& fam, std::vector<int> idx) {
  return CoeffPoly::symbol(find_family(s1, fam)->family, std::move(idx));
}

inline Expr times(const CoeffPoly& c, const Expr& e) { return make_coeff(c) * e; }

inline std::string label(const std::string& block, int i) { return block + "_" + std::to_string(i); }

struct Check {
  int compared = 0;
  std::vector<std::string> mismatches;
  void expect(const std::map<Key, Expr>& t, const Key& k, const Expr& want) {
    ++compared;
    const auto it = t.find(k);
    if (it == t.end() || !(it->second == want))
      mismatches.push_back(std::get<0>(k) + "(" + std::get<1>(k) + ", " + std::get<2>(k) + ")");
  }
};

/// A o A, A o B, B o B, rho(A) phi and rho(B) phi for the BF model with one rank-r block.
inline Check bf_table(int r, int d) {
  const ModelSpec spec{3, d, Flavor::bf, {{1, r}}, std::nullopt};
  const S1Ansatz s1 = build_S1_generic(spec);
  const auto t = table_map(spec, s1.action.expr);
  Check out;
  for (int a = 1; a <= r; ++a)
    for (int b = 1; b <= r; ++b) {
      Expr aa, ab, bb;
      for (int c = 1; c <= r; ++c) {
        aa -= times(sym(s1, "f5", {c, a, b}), v("A1", c)) + times(sym(s1, "f6", {a, b, c}), v("B1", c));
        ab += times(-sym(s1, "f4", {b, c, a}), v("A1", c)) + times(sym(s1, "f5", {b, a, c}), v("B1", c));
        bb -= times(sym(s1, "f3", {a, b, c}), v("A1", c)) + times(sym(s1, "f4", {a, b, c}), v("B1", c));
      }
      out.expect(t, {"circ", label("A1", a), label("A1", b)}, aa);
      out.expect(t, {"circ", label("A1", a), label("B1", b)}, ab);
      out.expect(t, {"circ", label("B1", a), label("B1", b)}, bb);
    }
  for (int a = 1; a <= r; ++a)
    for (int i = 1; i <= d; ++i) {
      out.expect(t, {"anchor", label("A1", a), label("phi", i)}, make_coeff(-sym(s1, "f2", {i, a})));
      out.expect(t, {"anchor", label("B1", a), label("phi", i)}, make_coeff(-sym(s1, "f1", {a, i})));
    }
  return out;
}

/// A o A, <A, A> and rho(A) phi for the Chern-Simons model with metric k.
inline Check cs_table(const RationalMatrix& k, int d) {
  const int r = static_cast<int>(k.size());
  const ModelSpec spec{3, d, Flavor::cs_bf, {}, CsBlock{r, k}};
  const S1Ansatz s1 = build_S1_generic(spec);
  const auto t = table_map(spec, s1.action.expr);
  Check out;
  for (int a = 1; a <= r; ++a) {
    for (int b = 1; b <= r; ++b) {
      Expr circ;
      for (int c = 1; c <= r; ++c)
        for (int e = 1; e <= r; ++e)
          for (int f = 1; f <= r; ++f)
            circ -= times(sym(s1, "f2", {c, e, f}) * (k[a - 1][c - 1] * k[b - 1][e - 1]), v("A1", f));
      out.expect(t, {"circ", label("A1", a), label("A1", b)}, circ);
      out.expect(t, {"pairing", label("A1", a), label("A1", b)}, make_const(k[a - 1][b - 1]));
    }
    for (int i = 1; i <= d; ++i) {
      CoeffPoly rho;
      for (int c = 1; c <= r; ++c) rho -= sym(s1, "f1", {c, i}) * k[a - 1][c - 1];
      out.expect(t, {"anchor", label("A1", a), label("phi", i)}, make_coeff(rho));
    }
  }
  return out;
}

}  // namespace tables
