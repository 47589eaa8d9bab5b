#include <random>

#include "bvdeform/worldsheet.hpp"
#include "doctest.h"

using namespace bvdeform;

namespace {

std::vector<DgaGen> comps(const std::string& f, int index, int total, int n) {
  std::vector<DgaGen> v;
  for (int k = 0; k <= n; ++k) v.push_back({f, index, k, total, false});
  return v;
}

std::vector<DgaGen> generators(int n) {
  std::vector<DgaGen> g;
  for (int t : {0, 1, 2}) {
    auto c = comps("X" + std::to_string(t), 1, t, n);
    g.insert(g.end(), c.begin(), c.end());
  }
  return g;
}

DgaExpr truncated(const DgaExpr& e, int n) {
  DgaExpr out;
  for (int k = 0; k <= n; ++k) out += form_part(e, k);
  return out;
}

ModelSpec bf(int n, int d) {
  ModelSpec s{n, d, Flavor::bf, {}, std::nullopt};
  for (int p = 1; p <= (n - 1) / 2; ++p) s.bf_blocks.push_back({p, 2});
  return s;
}

ModelSpec cs(int n, int d) {
  const int q = (n - 1) / 2;
  RationalMatrix k = (q % 2 == 1) ? RationalMatrix{{2, 1}, {1, 3}} : RationalMatrix{{0, 2}, {-2, 0}};
  ModelSpec s{n, d, Flavor::cs_bf, {}, CsBlock{2, k}};
  for (int p = 1; p <= (n - 3) / 2; ++p) s.bf_blocks.push_back({p, 1});
  return s;
}

}  // namespace

TEST_SUITE("worldsheet") {
  TEST_CASE("d squares to zero and is a graded derivation") {
    std::mt19937_64 rng(2);
    for (int n = 2; n <= 4; ++n) {
      const DgaContext ctx{n, 1, false};
      const auto gens = generators(n);
      for (int t = 0; t < 30; ++t) {
        const DgaExpr f = random_component_expr(gens, n, rng), g = random_component_expr(gens, n, rng);
        CHECK(apply_d(apply_d(f, ctx), ctx).is_zero());
        if (const auto df = f.homogeneous_degree()) {
          const DgaExpr rhs = apply_d(f, ctx) * g + (f * apply_d(g, ctx)).scaled_by(CoeffPoly::constant(sign_power(*df)));
          CHECK(truncated(apply_d(truncated(f * g, n), ctx), n) == truncated(rhs, n));
        }
      }
    }
  }

  TEST_CASE("delta0 squares to zero and commutes with d up to sign") {
    std::mt19937_64 rng(4);
    for (int n = 2; n <= 4; ++n) {
      const DgaContext ctx{n, 1, false};
      const auto gens = generators(n);
      for (int t = 0; t < 20; ++t) {
        const DgaExpr f = random_component_expr(gens, n, rng);
        CHECK(apply_delta0(apply_delta0(f, ctx), ctx).is_zero());
        CHECK(apply_delta0(apply_d(f, ctx), ctx) == -apply_d(apply_delta0(f, ctx), ctx));
      }
    }
  }

  TEST_CASE("delta0-exactness witness over all degree splits") {
    for (int n = 2; n <= 5; ++n)
      for (int tf = 0; tf <= 3; ++tf)
        for (int tg = 0; tg <= 3; ++tg) {
          CAPTURE(n);
          CAPTURE(tf);
          CAPTURE(tg);
          const auto F = comps("F", 1, tf, n), G = comps("G", 1, tg, n);
          const DgaExpr T = theorem1_witness(n, F, G);
          const IntegralClass cls = integrate(theorem1_sum(n, F, G) - apply_delta0(T, DgaContext{n, 1, false}), n);
          CHECK(cls.vanishes());
        }
  }

  TEST_CASE("component validation") {
    auto F = comps("F", 1, 1, 3);
    CHECK_NOTHROW(validate_components(F, 3));
    F.pop_back();
    CHECK_THROWS_AS(validate_components(F, 3), std::invalid_argument);
    auto G = comps("G", 1, 1, 2);
    G[1].total = 2;
    CHECK_THROWS_AS(validate_components(G, 2), std::invalid_argument);
  }

  TEST_CASE("integration modulo exact forms") {
    const int n = 2;
    const DgaContext ctx{n, 1, false};
    const auto X = comps("X", 1, 0, n), Y = comps("Y", 1, 1, n);
    const DgaExpr w = dga_var(X[0]) * dga_var(Y[1]);
    CHECK(integrate(apply_d(w, ctx), n).vanishes());
    CHECK_FALSE(integrate(dga_var(X[2]), n).vanishes());
    CHECK_FALSE(integrate(dga_var(X[0]) * dga_var(d_of(Y[1])), n).vanishes());
    // Lower form degrees do not contribute.
    CHECK(integrate(dga_var(X[1]), n).vanishes());
  }

  TEST_CASE("kinetic master equation") {
    for (int n = 2; n <= 5; ++n) {
      CAPTURE(n);
      CHECK(kinetic_master(build_S0(bf(n, 2)).kinetic).pass);
      if (n % 2 == 1) CHECK(kinetic_master(build_S0(cs(n, 2)).kinetic).pass);
    }
  }

  TEST_CASE("S0 acts as d on superfields") {
    for (const ModelSpec& spec : {bf(3, 2), cs(3, 1), bf(4, 1)}) {
      const S0 s0 = build_S0(spec);
      const PStructure P = make_pstructure(spec);
      const DgaContext ctx{spec.n, spec.d, true};
      for (const auto& v : P.fiber_variables()) {
        const DgaExpr X = dga_var(superfield_of(v));
        CHECK(s0_action_on(s0.kinetic, X) == apply_d(X, ctx));
      }
      // Functions of phi sit in the coefficient ring.
      const CoeffPoly phi1 = CoeffPoly::base_var(1);
      const DgaExpr f = DgaExpr::constant(phi1 * phi1 - CoeffPoly::constant(3) * phi1);
      CHECK_FALSE(apply_d(f, ctx).is_zero());
      CHECK(s0_action_on(s0.kinetic, f) == apply_d(f, ctx));
    }
  }

  TEST_CASE("first-order term is d-exact for every generic ansatz") {
    for (int n = 2; n <= 5; ++n) {
      CAPTURE(n);
      const ModelSpec s = bf(n, 1);
      CHECK(first_order_check(build_S1_generic(s).action, n, s.d).pass);
      if (n % 2 == 1) {
        const ModelSpec c = cs(n, 1);
        CHECK(first_order_check(build_S1_generic(c).action, n, c.d).pass);
      }
    }
    CHECK(first_order_check(Action{Expr{}, 2}, 2, 1).pass);
  }

  TEST_CASE("component expansion of a superfield product") {
    const int n = 2;
    const DgaGen A = superfield_of({"A", 1, Degree{1}});
    const DgaExpr e = expand_components(dga_var(A), n, 1);
    // A = A_0 + A_1 + A_2, one component per form degree.
    CHECK(e.size() == 3);
    for (int k = 0; k <= n; ++k) CHECK(form_part(e, k).size() == 1);
  }
}
