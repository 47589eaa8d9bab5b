#pragma once

// Independent reference computations used by the tests. Nothing here calls the
// polynomial engine; values are computed from first principles.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "bvdeform/rational.hpp"

namespace oracle {

using bvdeform::Rational;

/// Sign of sorting a word of graded letters by adjacent transpositions; 0 when an odd
/// letter repeats. Letters compare by key, parity tells whether a swap costs a sign.
template <class Key>
int sort_sign(std::vector<std::pair<Key, bool>> word) {
  int sign = 1;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = 0; j + 1 < word.size() - i; ++j)
      if (word[j + 1].first < word[j].first) {
        if (word[j].second && word[j + 1].second) sign = -sign;
        std::swap(word[j], word[j + 1]);
      }
  for (std::size_t j = 0; j + 1 < word.size(); ++j)
    if (word[j].first == word[j + 1].first && word[j].second) return 0;
  return sign;
}

/// A bivector on R^3 given by its three upper-triangular components and their gradients.
struct Bivector3 {
  using Point = std::array<Rational, 3>;
  std::function<Rational(int, int, const Point&)> value;      // pi^{ij}, any i, j
  std::function<Rational(int, int, int, const Point&)> grad;  // d_l pi^{ij}
};

/// J^{123} = sum_l pi^{1l} d_l pi^{23} + pi^{2l} d_l pi^{31} + pi^{3l} d_l pi^{12}.
inline Rational jacobiator123(const Bivector3& pi, const Bivector3::Point& x) {
  Rational j = 0;
  const int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& c : cyc)
    for (int l = 1; l <= 3; ++l) j += pi.value(c[0], l, x) * pi.grad(c[1], c[2], l, x);
  return j;
}

/// Bivector from three linear components pi^{12}, pi^{13}, pi^{23} = sum_k c_k phi^k.
inline Bivector3 linear_bivector(std::array<std::array<Rational, 3>, 3> upper) {
  auto comp = [upper](int i, int j) -> std::pair<int, std::array<Rational, 3>> {
    if (i == j) return {0, {0, 0, 0}};
    int s = i < j ? 1 : -1;
    int a = std::min(i, j), b = std::max(i, j);
    int idx = (a == 1 && b == 2) ? 0 : (a == 1 && b == 3) ? 1 : 2;
    return {s, upper[idx]};
  };
  Bivector3 out;
  out.value = [comp](int i, int j, const Bivector3::Point& x) {
    auto [s, c] = comp(i, j);
    Rational v = 0;
    for (int k = 0; k < 3; ++k) v += c[k] * x[k];
    return Rational(s * v);
  };
  out.grad = [comp](int i, int j, int l, const Bivector3::Point&) {
    auto [s, c] = comp(i, j);
    return Rational(s * c[l - 1]);
  };
  return out;
}

/// Number of monomials of the given total degree in a free graded-commutative algebra whose
/// generators have the listed degrees (odd generators at most once), by enumeration.
inline long count_monomials(const std::vector<int>& degrees, int target) {
  std::function<long(std::size_t, int)> rec = [&](std::size_t i, int left) -> long {
    if (i == degrees.size()) return left == 0 ? 1 : 0;
    const int d = degrees[i];
    long total = 0;
    if (d == 0) return rec(i + 1, left);  // degree-0 generators are coefficients, not fiber
    const int max_power = (d % 2 != 0) ? 1 : left / d;
    for (int e = 0; e <= max_power && e * d <= left; ++e) total += rec(i + 1, left - e * d);
    return total;
  };
  return rec(0, target);
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace oracle
