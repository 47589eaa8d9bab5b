#include "bvdeform/rational.hpp"

#include <stdexcept>

namespace bvdeform {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (slash || i == start || i + 1 == s.size())
        throw std::invalid_argument("malformed rational literal '" + s + "'");
      slash = true;
    } else if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
  }
  if (start == s.size()) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

bool is_square(const RationalMatrix& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) return false;
  return true;
}

Rational determinant(RationalMatrix m) {
  if (!is_square(m)) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

RationalMatrix transpose(const RationalMatrix& m) {
  if (m.empty()) return {};
  RationalMatrix t(m[0].size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

RationalMatrix identity_matrix(int size) {
  RationalMatrix m(size, std::vector<Rational>(size, Rational(0)));
  for (int i = 0; i < size; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!is_square(m)) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv = identity_matrix(static_cast<int>(n));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::domain_error("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational scale = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= scale;
      inv[col][c] /= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= factor * a[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace bvdeform
