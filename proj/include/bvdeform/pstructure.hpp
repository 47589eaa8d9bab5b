#pragma once

// P-structures (antibrackets of total degree -n+1) on sums of graded cotangent bundles,
// E[p] + E*[n-p-1] pairs and self-paired E[(n-1)/2] blocks, and the BV Laplacian.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bvdeform/expr.hpp"
#include "bvdeform/rational.hpp"

namespace bvdeform {

/// Conjugate blocks A_p^a (degree p) and B_{n-p-1, a}; p = 0 is (phi, B_{n-1}).
struct DarbouxPair {
  int p = 0;
  std::string a_block;
  std::string b_block;
  int rank = 0;
};

/// Block A^a of degree (n-1)/2 paired with itself through the constant matrix k.
struct SelfBlock {
  std::string block;
  RationalMatrix k;
  int rank() const { return static_cast<int>(k.size()); }
};

class PStructure {
 public:
  /// Validates: pair degrees sum to n-1, labels unique, self blocks only for odd n with k
  /// nondegenerate and k^T = (-1)^{q+1} k (q = (n-1)/2). Throws std::invalid_argument.
  PStructure(int n, std::vector<DarbouxPair> pairs, std::vector<SelfBlock> self_blocks = {});

  /// T*[n-1]M alone.
  static PStructure cotangent(int n, int base_dim);

  int n() const { return n_; }
  int base_dim() const;
  const std::vector<DarbouxPair>& pairs() const { return pairs_; }
  const std::vector<SelfBlock>& self_blocks() const { return self_blocks_; }
  int self_degree() const { return (n_ - 1) / 2; }

  GradedVar a_var(const DarbouxPair& pair, int index) const;
  GradedVar b_var(const DarbouxPair& pair, int index) const;
  GradedVar self_var(const SelfBlock& block, int index) const;

  /// Every fiber coordinate, canonical order.
  std::vector<GradedVar> fiber_variables() const;

 private:
  int n_;
  std::vector<DarbouxPair> pairs_;
  std::vector<SelfBlock> self_blocks_;
};

/// (F,G) = sum_p F dr/dA dl/dB G - (-1)^{np} F dr/dB dl/dA G + F dr/dA k dl/dA G.
Expr antibracket(const PStructure& P, const Expr& F, const Expr& G);

/// Delta F = sum_p dl/dA dl/dB F over the Darboux pairs.
Expr bv_laplacian(const PStructure& P, const Expr& F);

/// Random homogeneous expression of the given total degree with phi-polynomial
/// coefficients; zero when no fiber monomial of that degree exists.
Expr random_homogeneous(const PStructure& P, int degree, std::mt19937_64& rng);

/// Degrees d in [0, max_degree] for which some fiber monomial of degree d exists.
std::vector<int> realizable_degrees(const PStructure& P, int max_degree);

struct LawResult {
  std::string law;
  int checked = 0;
  int failures = 0;
  std::string counterexample;
  bool pass() const { return failures == 0; }
};

struct BvCheckReport {
  std::vector<LawResult> antibracket_laws;  // the four graded Poisson relations + degree law
  std::vector<LawResult> laplacian_laws;    // Delta-Leibniz, Delta^2 = 0, degree shift
  bool antibracket_pass() const;
  bool laplacian_pass() const;
  bool pass() const { return antibracket_pass() && laplacian_pass(); }
};

/// Runs every relation on `trials` random homogeneous triples drawn from `seed`.
BvCheckReport check_bv_identities(const PStructure& P, int trials, std::uint64_t seed);

}  // namespace bvdeform
