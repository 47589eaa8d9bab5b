#include <random>

#include "bvdeform/expr.hpp"
#include "bvdeform/pstructure.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bvdeform;

namespace {

GradedVar var(const std::string& block, int index, int degree) { return {block, index, Degree{degree}}; }

std::vector<GradedVar> alphabet() {
  return {var("A1", 1, 1), var("A1", 2, 1), var("B1", 1, 1), var("A2", 1, 2), var("A2", 2, 2), var("C", 1, 3)};
}

Expr random_expr(std::mt19937_64& rng, int degree) {
  const PStructure P(4, {{0, "phi", "B3", 2}, {1, "A1", "B2", 2}});
  return random_homogeneous(P, degree, rng);
}

}  // namespace

TEST_SUITE("symalg") {
  TEST_CASE("products of generators carry the sorting sign") {
    std::mt19937_64 rng(11);
    const auto gens = alphabet();
    for (int trial = 0; trial < 300; ++trial) {
      const int len = 1 + static_cast<int>(rng() % 5);
      Expr prod = make_const(1);
      std::vector<std::pair<GradedVar, bool>> word;
      std::vector<GradedVar> letters;
      for (int k = 0; k < len; ++k) {
        const GradedVar v = gens[rng() % gens.size()];
        prod = prod * make_var(v);
        word.push_back({v, v.odd()});
        letters.push_back(v);
      }
      const int s = oracle::sort_sign(word);
      if (s == 0) {
        CHECK(prod.is_zero());
        continue;
      }
      std::sort(letters.begin(), letters.end());
      FiberMonomial m;
      for (const auto& v : letters) {
        if (!m.factors.empty() && m.factors.back().first == v)
          ++m.factors.back().second;
        else
          m.factors.emplace_back(v, 1);
      }
      REQUIRE(prod.size() == 1);
      CHECK(prod.terms().begin()->first == m);
      CHECK(prod.terms().begin()->second == CoeffPoly::constant(s));
    }
  }

  TEST_CASE("graded commutativity and associativity") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      const int p = static_cast<int>(rng() % 4), q = static_cast<int>(rng() % 4), r = static_cast<int>(rng() % 3);
      Expr F = random_expr(rng, p), G = random_expr(rng, q), H = random_expr(rng, r);
      CHECK(F * G == (G * F).scaled_by(CoeffPoly::constant(sign_power(p * q))));
      CHECK((F * G) * H == F * (G * H));
    }
  }

  TEST_CASE("odd generators square to zero, even ones do not") {
    const Expr a = make_var(var("A1", 1, 1));
    const Expr b = make_var(var("A2", 1, 2));
    CHECK((a * a).is_zero());
    CHECK_FALSE((b * b).is_zero());
  }

  TEST_CASE("left and right derivatives differ by the commuting sign") {
    std::mt19937_64 rng(5);
    const PStructure P(4, {{0, "phi", "B3", 2}, {1, "A1", "B2", 2}});
    for (int trial = 0; trial < 60; ++trial) {
      const int deg = 1 + static_cast<int>(rng() % 4);
      const Expr F = random_homogeneous(P, deg, rng);
      for (const auto& x : P.fiber_variables()) {
        const int s = sign_power(x.total_degree() * (deg - x.total_degree()));
        CHECK(right_deriv(F, x) == left_deriv(x, F).scaled_by(CoeffPoly::constant(s)));
      }
    }
  }

  TEST_CASE("left derivative is a graded derivation") {
    std::mt19937_64 rng(9);
    const PStructure P(4, {{0, "phi", "B3", 2}, {1, "A1", "B2", 2}});
    for (int trial = 0; trial < 60; ++trial) {
      const int p = static_cast<int>(rng() % 4), q = static_cast<int>(rng() % 4);
      const Expr F = random_homogeneous(P, p, rng), G = random_homogeneous(P, q, rng);
      for (const auto& x : P.fiber_variables()) {
        const Expr lhs = left_deriv(x, F * G);
        const Expr rhs = left_deriv(x, F) * G +
                         (F * left_deriv(x, G)).scaled_by(CoeffPoly::constant(sign_power(x.total_degree() * p)));
        CHECK(lhs == rhs);
      }
      for (int j = 1; j <= 2; ++j) CHECK(partial_base(j, F * G) == partial_base(j, F) * G + F * partial_base(j, G));
    }
  }

  TEST_CASE("structure-function symbols normalize under declared symmetry") {
    auto f = make_family("f", {IndexPosition::upper, IndexPosition::upper}, {{{0, 1}, true}});
    CHECK(CoeffPoly::symbol(f, {2, 1}) == -CoeffPoly::symbol(f, {1, 2}));
    CHECK(CoeffPoly::symbol(f, {2, 2}).is_zero());
    auto g = make_family("g", {IndexPosition::lower, IndexPosition::lower}, {{{0, 1}, false}});
    CHECK(CoeffPoly::symbol(g, {2, 1}) == CoeffPoly::symbol(g, {1, 2}));
    CHECK(CoeffPoly::symbol(f, {1, 2}, {3, 1}).to_string() == "f[1,2|1,3]");
  }

  TEST_CASE("base partials") {
    const CoeffPoly x = CoeffPoly::base_var(1), y = CoeffPoly::base_var(2);
    CHECK((x * x * y).partial(1) == CoeffPoly::constant(2) * x * y);
    CHECK(y.partial(1).is_zero());
    auto f = make_family("f", {IndexPosition::upper, IndexPosition::upper}, {{{0, 1}, true}});
    const CoeffPoly s = CoeffPoly::symbol(f, {1, 2}) * x;
    CHECK(s.partial(2).partial(1) == s.partial(1).partial(2));
  }

  TEST_CASE("substitution and assignment errors") {
    auto f = make_family("f", {IndexPosition::upper, IndexPosition::upper}, {{{0, 1}, true}});
    StructureData data;
    data.assign(f, {1, 2}, CoeffPoly::base_var(3));
    CHECK_THROWS_AS(data.assign(f, {2, 1}, CoeffPoly::base_var(3)), std::invalid_argument);
    data.assign(f, {2, 1}, -CoeffPoly::base_var(3));
    CHECK_THROWS_AS(data.assign(f, {1, 1}, CoeffPoly::constant(1)), std::invalid_argument);
    CHECK_NOTHROW(data.assign(f, {1, 1}, CoeffPoly{}));
    const CoeffPoly p = CoeffPoly::symbol(f, {1, 2}, {3}) + CoeffPoly::symbol(f, {1, 2}) * CoeffPoly::base_var(1);
    CHECK(p.substitute(data) == CoeffPoly::constant(1) + CoeffPoly::base_var(1) * CoeffPoly::base_var(3));
    try {
      (void)CoeffPoly::symbol(f, {1, 3}).substitute(data);
      FAIL("expected out_of_range");
    } catch (const std::out_of_range& e) {
      CHECK(std::string(e.what()).find("f[1,3]") != std::string::npos);
    }
  }

  TEST_CASE("mixing one variable at two degrees is rejected") {
    CHECK_THROWS_AS(add(make_var(var("A", 1, 1)), make_var(var("A", 1, 2))), std::invalid_argument);
  }
}
