#pragma once

// Total-degree bookkeeping and Koszul signs for graded coordinates.

#include <compare>
#include <span>
#include <string>

namespace bvdeform {

/// Total degree |F| of a homogeneous graded object.
struct Degree {
  int total = 0;
  auto operator<=>(const Degree&) const = default;
};

enum class Parity { even, odd };

constexpr Parity parity(Degree d) { return (d.total % 2 == 0) ? Parity::even : Parity::odd; }
constexpr bool is_odd(int degree) { return degree % 2 != 0; }
/// (-1)^k for any integer k.
constexpr int sign_power(int k) { return (k % 2 == 0) ? 1 : -1; }

/// Block label of the base coordinates phi^i.
inline constexpr std::string_view kBaseBlock = "phi";

/// A coordinate of the target graded bundle: fiber variables A_p^a, B_{q a}, or the base phi^i.
struct GradedVar {
  std::string block;
  int index = 0;
  Degree degree;

  bool odd() const { return parity(degree) == Parity::odd; }
  bool is_base() const { return block == kBaseBlock; }
  int total_degree() const { return degree.total; }

  bool operator==(const GradedVar&) const = default;
  /// Canonical order: block label, then degree, then index.
  std::strong_ordering operator<=>(const GradedVar& other) const {
    if (auto c = block <=> other.block; c != 0) return c;
    if (auto c = degree.total <=> other.degree.total; c != 0) return c;
    return index <=> other.index;
  }
};

std::string to_string(const GradedVar& v);

/// Sign of reordering `before` into `after`: (-1)^(number of odd-odd transpositions).
/// Throws std::invalid_argument when `after` is not a permutation of `before`.
int koszul_sign(std::span<const GradedVar> before, std::span<const GradedVar> after);

}  // namespace bvdeform
