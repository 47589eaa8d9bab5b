#include "bvdeform/algebroid.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace bvdeform {

SectionBasis make_section_basis(std::vector<GradedVar> generators, int degree) {
  SectionBasis b;
  b.degree = degree;
  for (const auto& g : generators) {
    if (g.total_degree() != degree)
      throw std::invalid_argument("section generator " + to_string(g) + " has degree " +
                                  std::to_string(g.total_degree()) + ", expected " +
                                  std::to_string(degree));
    b.elements.push_back(make_var(g));
  }
  b.generators = std::move(generators);
  return b;
}

SectionBasis section_basis(const ModelSpec& spec) {
  std::vector<GradedVar> gens;
  if (spec.n == 2) {
    for (int i = 1; i <= spec.d; ++i) gens.push_back({std::string(kBaseBlock), i, Degree{0}});
    return make_section_basis(gens, 0);
  }
  if (spec.n == 3 && spec.flavor == Flavor::bf && spec.bf_blocks.size() == 1) {
    const int r = spec.bf_blocks.front().rank;
    for (int a = 1; a <= r; ++a) gens.push_back({a_label(1), a, Degree{1}});
    for (int a = 1; a <= r; ++a) gens.push_back({b_label(3, 1), a, Degree{1}});
    return make_section_basis(gens, 1);
  }
  if (spec.n == 3 && spec.flavor == Flavor::cs_bf && spec.bf_blocks.empty()) {
    for (int a = 1; a <= spec.cs_block->rank; ++a) gens.push_back({self_label(3), a, Degree{1}});
    return make_section_basis(gens, 1);
  }
  throw std::invalid_argument("no algebroid section basis for this model (n=" + std::to_string(spec.n) +
                              ", " + to_string(spec.flavor) + ")");
}

Expr derived_bracket(const PStructure& P, const Expr& S, const Expr& e1, const Expr& e2) {
  return antibracket(P, antibracket(P, S, e1), e2);
}

Expr anchor(const PStructure& P, const Expr& S, const Expr& e, const Expr& F) {
  for (const auto& [m, c] : F.terms())
    if (!m.empty()) throw std::invalid_argument("anchor acts on functions of phi only");
  return antibracket(P, e, antibracket(P, S, F));
}

Expr pairing(const PStructure& P, const Expr& e1, const Expr& e2) { return antibracket(P, e1, e2); }

Expr d_op(const PStructure& P, const Expr& S, const Expr& F) { return antibracket(P, S, F); }

std::vector<TableEntry> operation_table(const ModelSpec& spec, const Expr& S) {
  const PStructure P = make_pstructure(spec);
  const SectionBasis basis = section_basis(spec);
  std::vector<TableEntry> out;
  const std::size_t k = basis.elements.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      out.push_back({"circ", to_string(basis.generators[a]), to_string(basis.generators[b]),
                     derived_bracket(P, S, basis.elements[a], basis.elements[b])});
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      out.push_back({"pairing", to_string(basis.generators[a]), to_string(basis.generators[b]),
                     pairing(P, basis.elements[a], basis.elements[b])});
  for (std::size_t a = 0; a < k; ++a)
    for (int i = 1; i <= spec.d; ++i)
      out.push_back({"anchor", to_string(basis.generators[a]), "phi_" + std::to_string(i),
                     anchor(P, S, basis.elements[a], make_var({std::string(kBaseBlock), i, Degree{0}}))});
  return out;
}

bool AxiomReport::pass() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const LawResult& l) { return l.pass(); });
}

namespace {

CoeffPoly random_phi_poly(int d, int max_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 3), num(-4, 4), den(1, 3), deg(0, max_degree), idx(1, d);
  CoeffPoly out;
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    int p = num(rng);
    if (p == 0) p = 1;
    Rational c(p, den(rng));
    c.canonicalize();
    CoeffPoly term = CoeffPoly::constant(c);
    const int e = deg(rng);
    for (int i = 0; i < e; ++i) term = term * CoeffPoly::base_var(idx(rng));
    out += term;
  }
  if (out.is_zero()) out = CoeffPoly::base_var(1);
  return out;
}

/// Coordinate functions phi^i first, so vector-field components are compared directly.
std::vector<Expr> test_functions(int d, const AxiomOptions& opt, std::mt19937_64& rng) {
  std::vector<Expr> out;
  for (int i = 1; i <= d; ++i) out.push_back(make_coeff(CoeffPoly::base_var(i)));
  for (int t = 0; t < opt.test_functions; ++t) out.push_back(make_coeff(random_phi_poly(d, 3, rng)));
  return out;
}

void record(LawResult& law, const Expr& residual, const std::string& context) {
  ++law.checked;
  if (residual.is_zero()) return;
  if (law.failures++ == 0) law.counterexample = context + " ; residual = " + to_text(residual);
}

struct Ops {
  const PStructure& P;
  Expr S;
  Expr circ(const Expr& a, const Expr& b) const { return derived_bracket(P, S, a, b); }
  Expr rho(const Expr& e, const Expr& F) const { return antibracket(P, e, antibracket(P, S, F)); }
  Expr pair(const Expr& a, const Expr& b) const { return antibracket(P, a, b); }
  Expr D(const Expr& F) const { return antibracket(P, S, F); }
};

}  // namespace

AxiomReport check_lie_algebroid(const PStructure& P, const Action& S1, const StructureData& data,
                                const SectionBasis& basis, const AxiomOptions& opt) {
  const Ops ops{P, substitute(S1.expr, data)};
  std::mt19937_64 rng(opt.seed);
  const std::vector<Expr> fns = test_functions(P.base_dim(), opt, rng);
  LawResult anti{"antisymmetry [e1,e2] = -[e2,e1]", 0, 0, {}};
  LawResult hom{"1: [rho(e1),rho(e2)] = rho([e1,e2])", 0, 0, {}};
  LawResult leib{"2: [e1,F e2] = F[e1,e2] + (rho(e1)F) e2", 0, 0, {}};
  const auto& E = basis.elements;
  for (std::size_t a = 0; a < E.size(); ++a)
    for (std::size_t b = 0; b < E.size(); ++b) {
      const std::string ctx = "e1 = " + to_text(E[a]) + " ; e2 = " + to_text(E[b]);
      const Expr br = ops.circ(E[a], E[b]);
      record(anti, br + ops.circ(E[b], E[a]), ctx);
      for (const auto& F : fns) {
        const std::string fctx = ctx + " ; F = " + to_text(F);
        record(hom, ops.rho(E[a], ops.rho(E[b], F)) - ops.rho(E[b], ops.rho(E[a], F)) - ops.rho(br, F), fctx);
        record(leib, ops.circ(E[a], F * E[b]) - F * br - ops.rho(E[a], F) * E[b], fctx);
      }
    }
  return AxiomReport{{anti, hom, leib}};
}

AxiomReport check_courant(const PStructure& P, const Action& S1, const StructureData& data,
                          const SectionBasis& basis, const AxiomOptions& opt) {
  const Ops ops{P, substitute(S1.expr, data)};
  std::mt19937_64 rng(opt.seed);
  const int d = P.base_dim();
  const std::vector<Expr> fns = test_functions(d, opt, rng);
  std::vector<Expr> secs = basis.elements;
  for (int s = 0; s < opt.random_sections; ++s) {
    Expr e;
    for (const auto& g : basis.elements) e += g.scaled_by(random_phi_poly(d, 2, rng));
    secs.push_back(e);
  }
  LawResult p1{"1: e1o(e2oe3) = (e1oe2)oe3 + e2o(e1oe3)", 0, 0, {}};
  LawResult p2{"2: rho(e1oe2) = [rho(e1),rho(e2)]", 0, 0, {}};
  LawResult p3{"3: e1o(F e2) = F(e1oe2) + (rho(e1)F) e2", 0, 0, {}};
  LawResult p4{"4: e1oe2 + e2oe1 = D<e1,e2>", 0, 0, {}};
  LawResult p5{"5: rho(e1)<e2,e3> = <e1oe2,e3> + <e2,e1oe3>", 0, 0, {}};
  auto ctx = [](std::initializer_list<const Expr*> es) {
    std::string s;
    int k = 1;
    for (const Expr* e : es) {
      if (k > 1) s += " ; ";
      s += "e" + std::to_string(k++) + " = " + to_text(*e);
    }
    return s;
  };
  for (std::size_t a = 0; a < secs.size(); ++a)
    for (std::size_t b = 0; b < secs.size(); ++b) {
      const Expr& e1 = secs[a];
      const Expr& e2 = secs[b];
      const Expr c12 = ops.circ(e1, e2);
      const std::string c2 = ctx({&e1, &e2});
      record(p4, c12 + ops.circ(e2, e1) - ops.D(ops.pair(e1, e2)), c2);
      for (const auto& F : fns) {
        const std::string fctx = c2 + " ; F = " + to_text(F);
        record(p2, ops.rho(c12, F) - ops.rho(e1, ops.rho(e2, F)) + ops.rho(e2, ops.rho(e1, F)), fctx);
        record(p3, ops.circ(e1, F * e2) - F * c12 - ops.rho(e1, F) * e2, fctx);
      }
      for (std::size_t c = 0; c < secs.size(); ++c) {
        const Expr& e3 = secs[c];
        const std::string c3 = ctx({&e1, &e2, &e3});
        record(p1, ops.circ(e1, ops.circ(e2, e3)) - ops.circ(c12, e3) - ops.circ(e2, ops.circ(e1, e3)), c3);
        record(p5, ops.rho(e1, ops.pair(e2, e3)) - ops.pair(c12, e3) - ops.pair(e2, ops.circ(e1, e3)), c3);
      }
    }
  return AxiomReport{{p1, p2, p3, p4, p5}};
}

}  // namespace bvdeform
