#include <random>

#include "bvdeform/dsl.hpp"
#include "bvdeform/master.hpp"
#include "doctest.h"
#include "fixtures_path.hpp"
#include "oracles.hpp"

using namespace bvdeform;

namespace {

ModelSpec bf(int n, int d, std::vector<BfBlock> blocks) { return ModelSpec{n, d, Flavor::bf, std::move(blocks), std::nullopt}; }

ModelSpec cs(int d, RationalMatrix k) {
  return ModelSpec{3, d, Flavor::cs_bf, {}, CsBlock{static_cast<int>(k.size()), std::move(k)}};
}

IdentitySet extracted(const ModelSpec& spec) { return extract_identities(make_pstructure(spec), build_S1_generic(spec)); }

ModelFile load(const std::string& name) { return parse_model(read_file(fixture_path(name))); }

}  // namespace

TEST_SUITE("master") {
  TEST_CASE("n = 2 extraction equals -2 times the brute-force Jacobiator") {
    const ModelSpec spec = bf(2, 3, {});
    const IdentitySet ids = extracted(spec);
    REQUIRE(ids.equations.size() == 1);
    CHECK(ids.equations[0].tag == "B1_1*B1_2*B1_3");
    const S1Ansatz s1 = build_S1_generic(spec);
    const FamilyPtr f = find_family(s1, "f")->family;
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
      std::array<std::array<Rational, 3>, 3> upper;
      for (auto& row : upper)
        for (auto& x : row) x = oracle::random_rational(rng);
      const oracle::Bivector3 pi = oracle::linear_bivector(upper);
      const oracle::Bivector3::Point x{oracle::random_rational(rng), oracle::random_rational(rng),
                                       oracle::random_rational(rng)};
      PointAssignment point;
      for (int i = 1; i <= 3; ++i) point.base[i] = x[i - 1];
      for (const auto& s : ids.equations[0].equation.symbols()) {
        const int i = s.indices()[0], j = s.indices()[1];
        point.symbols[s] = s.deriv().empty() ? pi.value(i, j, x) : pi.grad(i, j, s.deriv()[0], x);
      }
      CHECK(ids.equations[0].equation.evaluate(point) == -2 * oracle::jacobiator123(pi, x));
    }
  }

  TEST_CASE("n = 2 identities match the cyclic Jacobi transcription") {
    const ModelSpec spec = bf(2, 3, {});
    const SpanComparison c = compare_identity_spans(extracted(spec), transcribe_paper_identities(PaperIdentities::n2_jacobi, spec));
    CHECK(c.relation == SpanRelation::equal);
    CHECK(c.rank_a == 1);
  }

  TEST_CASE("n = 3 BF identities match the nine transcribed identities") {
    for (int r : {1, 2, 3}) {
      CAPTURE(r);
      const ModelSpec spec = bf(3, 2, {{1, r}});
      const SpanComparison c = compare_identity_spans(extracted(spec), transcribe_paper_identities(PaperIdentities::n3_bf, spec));
      CHECK(c.relation == SpanRelation::equal);
    }
  }

  TEST_CASE("full-permutation antisymmetrization differs from the shuffle reading at rank 3") {
    const ModelSpec spec = bf(3, 2, {{1, 3}});
    const SpanComparison c = compare_identity_spans(
        extracted(spec), transcribe_paper_identities(PaperIdentities::n3_bf, spec, Antisymmetrization::full));
    CHECK(c.relation != SpanRelation::equal);
    CHECK(c.witness.has_value());
  }

  TEST_CASE("n = 3 CS identities match the transcription") {
    for (const RationalMatrix& k : {RationalMatrix{{1, 0}, {0, 1}}, RationalMatrix{{2, 1}, {1, 3}}}) {
      const ModelSpec spec = cs(2, k);
      const SpanComparison c = compare_identity_spans(extracted(spec), transcribe_paper_identities(PaperIdentities::n3_cs, spec));
      CHECK(c.relation == SpanRelation::equal);
    }
    const ModelSpec r3 = cs(1, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(compare_identity_spans(extracted(r3), transcribe_paper_identities(PaperIdentities::n3_cs, r3)).relation ==
          SpanRelation::equal);
  }

  TEST_CASE("span comparison detects containment and alphabet mismatch") {
    const ModelSpec spec = bf(3, 2, {{1, 2}});
    IdentitySet a = extracted(spec);
    IdentitySet b = a;
    b.equations.pop_back();
    const SpanComparison c = compare_identity_spans(a, b);
    CHECK(c.relation == SpanRelation::b_in_a);
    REQUIRE(c.witness.has_value());
    CHECK(c.witness_side == "a");
    CHECK(compare_identity_spans(b, a).relation == SpanRelation::a_in_b);
    IdentitySet other = extracted(bf(2, 3, {}));
    CHECK_THROWS_AS(compare_identity_spans(a, other), std::invalid_argument);
    CHECK_THROWS_AS(paper_identities_for(bf(4, 2, {{1, 1}})), std::invalid_argument);
    CHECK(paper_identities_for(spec) == PaperIdentities::n3_bf);
  }

  TEST_CASE("structure data verification") {
    const ModelFile so3 = load("so3.model");
    const PStructure P2 = make_pstructure(so3.spec);
    CHECK(verify_structure_data(P2, build_S1_generic(so3.spec).action, so3.data).pass);

    const ModelFile bad = load("bivector_fail.model");
    const VerifyReport v = verify_structure_data(P2, build_S1_generic(bad.spec).action, bad.data);
    CHECK_FALSE(v.pass);
    REQUIRE(v.residuals.size() == 1);
    CHECK(v.residuals[0].first == "B1_1*B1_2*B1_3");
    CHECK(v.residuals[0].second == CoeffPoly::constant(-2) * CoeffPoly::base_var(1));

    ModelFile courant = load("courant_exact.model");
    const PStructure P3 = make_pstructure(courant.spec);
    const S1Ansatz s1 = build_S1_generic(courant.spec);
    CHECK(verify_structure_data(P3, s1.action, courant.data).pass);
    StructureData perturbed;
    for (const auto& [sym, value] : courant.data.values())
      perturbed.assign(sym.family_ptr(), sym.indices(),
                       sym.to_string() == "f4[1,2,1]" ? CoeffPoly::constant(-2) : value);
    CHECK_FALSE(verify_structure_data(P3, s1.action, perturbed).pass);

    const ModelFile lie = load("cs_quadratic_lie.model");
    CHECK(verify_structure_data(make_pstructure(lie.spec), build_S1_generic(lie.spec).action, lie.data).pass);
    const ModelFile nj = load("cs_non_jacobi.model");
    CHECK_FALSE(verify_structure_data(make_pstructure(nj.spec), build_S1_generic(nj.spec).action, nj.data).pass);
  }

  TEST_CASE("missing data names the symbol") {
    const ModelSpec spec = bf(2, 3, {});
    const S1Ansatz s1 = build_S1_generic(spec);
    StructureData partial;
    partial.assign(find_family(s1, "f")->family, {1, 2}, CoeffPoly::base_var(3));
    try {
      (void)verify_structure_data(make_pstructure(spec), s1.action, partial);
      FAIL("expected out_of_range");
    } catch (const std::out_of_range& e) {
      CHECK(std::string(e.what()).find("f[1,3]") != std::string::npos);
    }
  }

  TEST_CASE("expand_master requires a degree-n action") {
    const ModelSpec spec = bf(3, 1, {{1, 1}});
    const PStructure P = make_pstructure(spec);
    const Action wrong{make_var(P.a_var(P.pairs()[1], 1)), 1};
    CHECK_THROWS_AS(expand_master(P, wrong), std::invalid_argument);
  }

  TEST_CASE("higher n extraction is consistent under the antibracket") {
    // (S1,S1) has total degree n+1 and every identity is quadratic in the structure functions.
    const ModelSpec spec = bf(4, 1, {{1, 1}});
    const PStructure P = make_pstructure(spec);
    const S1Ansatz s1 = build_S1_generic(spec);
    const Expr e = expand_master(P, s1.action);
    CHECK(total_degree(e) == std::optional<int>(5));
    for (const auto& id : extract_identities(P, s1).equations)
      for (const auto& [m, coef] : id.equation.terms()) CHECK(m.symbols.size() == 2);
  }
}
