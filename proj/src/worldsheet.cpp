#include "bvdeform/worldsheet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "bvdeform/linalg.hpp"

namespace bvdeform {

std::strong_ordering DgaGen::operator<=>(const DgaGen& o) const {
  if (auto c = field <=> o.field; c != 0) return c;
  if (auto c = index <=> o.index; c != 0) return c;
  if (auto c = form <=> o.form; c != 0) return c;
  return differential <=> o.differential;
}

std::string to_string(const DgaGen& g) {
  std::string s = (g.differential ? "d" : "") + g.field + "_" + std::to_string(g.index);
  if (!g.superfield()) s += "(" + std::to_string(g.form) + ")";
  return s;
}

DgaGen superfield_of(const GradedVar& v) { return {v.block, v.index, -1, v.degree.total, false}; }

DgaGen component(const DgaGen& superfield, int form) {
  return {superfield.field, superfield.index, form, superfield.total, superfield.differential};
}

DgaGen d_of(const DgaGen& g) {
  if (g.differential) throw std::logic_error("d of a d-image is zero, not a generator");
  return {g.field, g.index, g.form, g.total, true};
}

DgaExpr dga_var(const DgaGen& g) { return DgaExpr::generator(g); }

int form_degree(const DgaMonomial& m) {
  int f = 0;
  for (const auto& [g, e] : m.factors) f += g.form_degree() * e;
  return f;
}

namespace {

DgaGen phi_gen(int j, bool superfield) {
  return {std::string(kBaseBlock), j, superfield ? -1 : 0, 0, false};
}

DgaExpr truncate(const DgaExpr& f, int n) {
  DgaExpr out;
  for (const auto& [m, c] : f.terms())
    if (form_degree(m) <= n) out.add_term(m, c);
  return out;
}

DgaExpr from_monomial(const DgaMonomial& m) { return DgaExpr::term(m, CoeffPoly::constant(1)); }

DgaExpr scaled(const DgaExpr& f, const Rational& r) { return f.scaled_by(CoeffPoly::constant(r)); }

/// Odd derivation of total degree 1 fixed by its values on generators and coefficients.
DgaExpr odd_derivation(const DgaExpr& f, const DgaContext& ctx,
                       const std::function<DgaExpr(const DgaGen&)>& on_gen,
                       const std::function<DgaExpr(const CoeffPoly&)>& on_coeff) {
  auto product = [&](const DgaExpr& a, const DgaExpr& b) {
    return ctx.superfield ? a * b : truncate(a * b, ctx.n);
  };
  DgaExpr out;
  for (const auto& [m, c] : f.terms()) {
    const DgaExpr dc = on_coeff(c);
    if (!dc.is_zero()) out += product(dc, from_monomial(m));
    int prefix_degree = 0;
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      const auto& [g, e] = m.factors[i];
      const DgaExpr dg = on_gen(g);
      if (!dg.is_zero()) {
        DgaMonomial prefix, rest, suffix;
        prefix.factors.assign(m.factors.begin(), m.factors.begin() + i);
        if (e > 1) rest.factors.emplace_back(g, e - 1);
        suffix.factors.assign(m.factors.begin() + i + 1, m.factors.end());
        DgaExpr t = product(from_monomial(prefix), from_monomial(rest));
        t = product(t, dg);
        t = product(t, from_monomial(suffix));
        out += product(DgaExpr::constant(c), scaled(t, Rational(e * sign_power(prefix_degree))));
      }
      prefix_degree += g.total_degree() * e;
    }
  }
  return out;
}

DgaExpr d_coefficient(const CoeffPoly& c, const DgaContext& ctx) {
  DgaExpr out;
  if (c.constant_value()) return out;
  for (int j = 1; j <= ctx.base_dim; ++j) {
    CoeffPoly pj = c.partial(j);
    if (!pj.is_zero()) out += dga_var(d_of(phi_gen(j, ctx.superfield))).scaled_by(pj);
  }
  return ctx.superfield ? out : truncate(out, ctx.n);
}

}  // namespace

DgaExpr apply_d(const DgaExpr& f, const DgaContext& ctx) {
  return odd_derivation(
      f, ctx,
      [&ctx](const DgaGen& g) -> DgaExpr {
        if (g.differential) return {};
        if (!g.superfield() && g.form + 1 > ctx.n) return {};
        return dga_var(d_of(g));
      },
      [&ctx](const CoeffPoly& c) { return d_coefficient(c, ctx); });
}

DgaExpr apply_delta0(const DgaExpr& f, const DgaContext& ctx) {
  if (ctx.superfield) return apply_d(f, ctx);
  return odd_derivation(
      f, ctx,
      [](const DgaGen& g) -> DgaExpr {
        if (g.superfield()) throw std::invalid_argument("component delta0 applied to a superfield");
        if (g.differential || g.form == 0) return {};
        return dga_var(d_of(component(g, g.form - 1)));
      },
      [](const CoeffPoly&) { return DgaExpr{}; });
}

DgaExpr form_part(const DgaExpr& f, int k) {
  DgaExpr out;
  for (const auto& [m, c] : f.terms())
    if (form_degree(m) == k) out.add_term(m, c);
  return out;
}

namespace {

/// Sum of the components of one superfield generator (or of its d-image).
DgaExpr expand_generator(const DgaGen& g, int n) {
  DgaExpr out;
  const int top = g.differential ? n - 1 : n;
  for (int k = 0; k <= top; ++k) {
    if (g.field == kBaseBlock && k == 0 && !g.differential)
      throw std::logic_error("phi_0 lives in the coefficient ring");
    out += dga_var(component(g, k));
  }
  return out;
}

/// c(phi_0 + h) with h^j = sum_{k>=1} phi^j_k, truncated at form n.
DgaExpr taylor(const CoeffPoly& c, int n, int base_dim) {
  DgaExpr out = DgaExpr::constant(c);
  if (c.constant_value()) return out;
  std::vector<DgaExpr> h(base_dim + 1);
  for (int j = 1; j <= base_dim; ++j)
    for (int k = 1; k <= n; ++k) h[j] += dga_var({std::string(kBaseBlock), j, k, 0, false});
  DgaExpr term = out;
  for (int m = 1; m <= n && !term.is_zero(); ++m) {
    DgaExpr next;
    for (int j = 1; j <= base_dim; ++j) {
      DgaExpr dj = term.map_coefficients([j](const CoeffPoly& x) { return x.partial(j); });
      if (!dj.is_zero()) next += truncate(h[j] * dj, n);
    }
    term = scaled(next, Rational(1, m));
    out += term;
  }
  return out;
}

}  // namespace

DgaExpr expand_components(const DgaExpr& f, int n, int base_dim) {
  DgaExpr out;
  for (const auto& [m, c] : f.terms()) {
    DgaExpr acc = taylor(c, n, base_dim);
    for (const auto& [g, e] : m.factors) {
      if (!g.superfield()) throw std::invalid_argument("expand_components expects superfields");
      const DgaExpr comp = expand_generator(g, n);
      for (int k = 0; k < e; ++k) acc = truncate(acc * comp, n);
    }
    out += acc;
  }
  return out;
}

DgaExpr to_superfield(const Expr& f) {
  DgaExpr out;
  for (const auto& [m, c] : f.terms()) {
    DgaExpr t = DgaExpr::constant(c);
    for (const auto& [v, e] : m.factors)
      for (int k = 0; k < e; ++k) t = t * dga_var(superfield_of(v));
    out += t;
  }
  return out;
}

namespace {

using Content = std::vector<std::pair<DgaGen, int>>;

Content content_of(const DgaMonomial& m) {
  std::map<DgaGen, int> acc;
  for (const auto& [g, e] : m.factors) acc[g.underlying()] += e;
  return Content(acc.begin(), acc.end());
}

/// Monomials of form n-1 with the given content, before applying d.
std::vector<DgaExpr> preimages(const Content& content, int n) {
  std::vector<DgaExpr> out;
  std::vector<int> diff(content.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int form) {
    if (i == content.size()) {
      if (form != n - 1) return;
      DgaExpr t = DgaExpr::constant(CoeffPoly::constant(1));
      for (std::size_t k = 0; k < content.size(); ++k) {
        const auto& [u, mult] = content[k];
        for (int x = 0; x < mult - diff[k]; ++x) t = t * dga_var(u);
        for (int x = 0; x < diff[k]; ++x) t = t * dga_var(d_of(u));
      }
      if (!t.is_zero()) out.push_back(t);
      return;
    }
    const auto& [u, mult] = content[i];
    for (int j = 0; j <= mult; ++j) {
      if (j > 0 && u.form + 1 > n) break;
      diff[i] = j;
      rec(i + 1, form + u.form * mult + j);
    }
    diff[i] = 0;
  };
  rec(0, 0);
  return out;
}

}  // namespace

IntegralClass integrate(const DgaExpr& f, int n) {
  IntegralClass out;
  out.top = form_part(f, n);
  std::map<Content, DgaExpr> by_content;
  for (const auto& [m, c] : out.top.terms()) {
    if (!c.constant_value())
      throw std::invalid_argument("integrate needs rational constant coefficients, got " + c.to_string());
    if (std::any_of(m.factors.begin(), m.factors.end(), [](const auto& x) { return x.first.superfield(); }))
      throw std::invalid_argument("integrate expects component expressions");
    by_content[content_of(m)].add_term(m, c);
  }
  const DgaContext ctx{n, 0, false};
  for (const auto& [content, part] : by_content) {
    std::vector<DgaExpr> images;
    for (const auto& pre : preimages(content, n)) images.push_back(apply_d(pre, ctx));
    std::map<DgaMonomial, std::size_t> index;
    for (const auto& img : images)
      for (const auto& [m, c] : img.terms()) index.emplace(m, 0);
    for (const auto& [m, c] : part.terms()) index.emplace(m, 0);
    std::vector<DgaMonomial> monos;
    for (auto& [m, i] : index) {
      i = monos.size();
      monos.push_back(m);
    }
    auto vec = [&](const DgaExpr& e) {
      SparseVec v;
      for (const auto& [m, c] : e.terms()) v[index.at(m)] = *c.constant_value();
      return v;
    };
    RowSpace space;
    for (const auto& img : images) space.insert(vec(img));
    for (const auto& [i, c] : space.reduce(vec(part))) out.remainder.add_term(monos[i], CoeffPoly::constant(c));
  }
  return out;
}

void validate_components(const std::vector<DgaGen>& comps, int n) {
  if (static_cast<int>(comps.size()) != n + 1)
    throw std::invalid_argument("expected components of forms 0.." + std::to_string(n) + ", got " +
                                std::to_string(comps.size()));
  std::vector<bool> seen(n + 1, false);
  for (const auto& g : comps) {
    if (g.superfield() || g.differential || g.form > n)
      throw std::invalid_argument("component " + to_string(g) + " is not a form 0.." + std::to_string(n) +
                                  " component");
    if (seen[g.form]) throw std::invalid_argument("form " + std::to_string(g.form) + " given twice");
    seen[g.form] = true;
    if (g.total != comps.front().total)
      throw std::invalid_argument("components of one superfield must share the total degree");
  }
}

namespace {

std::vector<DgaGen> by_form(std::vector<DgaGen> comps, int n) {
  validate_components(comps, n);
  std::sort(comps.begin(), comps.end(), [](const DgaGen& a, const DgaGen& b) { return a.form < b.form; });
  return comps;
}

}  // namespace

DgaExpr theorem1_sum(int n, const std::vector<DgaGen>& F, const std::vector<DgaGen>& G) {
  const auto f = by_form(F, n);
  const auto g = by_form(G, n);
  DgaExpr out;
  for (int p = 0; p <= n - 1; ++p) out += dga_var(f[n - p - 1]) * dga_var(d_of(g[p]));
  return out;
}

DgaExpr theorem1_witness(int n, const std::vector<DgaGen>& F, const std::vector<DgaGen>& G) {
  const auto f = by_form(F, n);
  const auto g = by_form(G, n);
  DgaExpr out;
  const int s = sign_power(f.front().total);
  for (int q = 0; q <= n - 1; ++q)
    out += scaled(dga_var(f[n - q - 1]) * dga_var(g[q + 1]), Rational(s * (q + 1)));
  return out;
}

FirstOrderReport first_order_check(const Action& S1, int n, int base_dim) {
  FirstOrderReport rep;
  const DgaContext ctx{n, base_dim, false};
  const DgaExpr comps = expand_components(to_superfield(S1.expr), n, base_dim);
  rep.top = form_part(apply_delta0(comps, ctx), n);
  rep.witness = form_part(comps, n - 1);
  const DgaExpr diff = rep.top - apply_d(rep.witness, ctx);
  rep.pass = diff.is_zero();
  if (!rep.pass) rep.detail = "delta0 S1 - d(S1_{n-1}) = " + diff.to_string();
  return rep;
}

DgaExpr kinetic_density(const KineticAction& k) {
  DgaExpr out;
  for (const auto& pr : k.pairs)
    for (int a = 1; a <= pr.rank; ++a) {
      const DgaGen B{pr.b_block, a, -1, k.n - 1 - pr.p, false};
      const DgaGen A{pr.a_block, a, -1, pr.p, false};
      out += scaled(dga_var(B) * dga_var(d_of(A)), Rational(pr.sign));
    }
  for (const auto& sb : k.self_blocks) {
    const int q = (k.n - 1) / 2;
    for (std::size_t a = 0; a < sb.g.size(); ++a)
      for (std::size_t b = 0; b < sb.g.size(); ++b) {
        if (sb.g[a][b] == 0) continue;
        const DgaGen Aa{sb.block, static_cast<int>(a + 1), -1, q, false};
        const DgaGen Ab{sb.block, static_cast<int>(b + 1), -1, q, false};
        out += scaled(dga_var(Aa) * dga_var(d_of(Ab)), sb.g[a][b] / 2);
      }
  }
  return out;
}

namespace {

int kinetic_base_dim(const KineticAction& k) {
  for (const auto& pr : k.pairs)
    if (pr.p == 0) return pr.rank;
  return 0;
}

bool is_phi(const DgaGen& g) { return g.field == kBaseBlock; }

DgaExpr partial_left(const DgaExpr& L, const DgaGen& x) {
  if (is_phi(x)) return L.map_coefficients([j = x.index](const CoeffPoly& c) { return c.partial(j); });
  return L.left_deriv(x);
}

DgaExpr partial_right(const DgaExpr& L, const DgaGen& x) {
  if (is_phi(x)) return L.map_coefficients([j = x.index](const CoeffPoly& c) { return c.partial(j); });
  return L.right_deriv(x);
}

/// -sum over homogeneous parts K of (-1)^{|K|} dK.
DgaExpr minus_signed_d(const DgaExpr& K, const DgaContext& ctx) {
  DgaExpr out;
  for (const auto& [m, c] : K.terms()) {
    DgaExpr t = apply_d(DgaExpr::term(m, c), ctx);
    if (sign_power(m.degree()) > 0)
      out -= t;
    else
      out += t;
  }
  return out;
}

DgaExpr var_left(const DgaExpr& L, const DgaGen& x, const DgaContext& ctx) {
  DgaExpr t = apply_d(L.left_deriv(d_of(x)), ctx);
  return is_odd(x.total) ? partial_left(L, x) + t : partial_left(L, x) - t;
}

DgaExpr var_right(const DgaExpr& L, const DgaGen& x, const DgaContext& ctx) {
  return partial_right(L, x) + minus_signed_d(L.right_deriv(d_of(x)), ctx);
}

/// sum over conjugate pairs of R(A) Lf(B) - (-1)^{np} R(B) Lf(A), plus k R(A^a) Lf(A^b).
DgaExpr pair_sum(const KineticAction& k, const std::function<DgaExpr(const DgaGen&)>& R,
                 const std::function<DgaExpr(const DgaGen&)>& Lf) {
  DgaExpr out;
  for (const auto& pr : k.pairs)
    for (int a = 1; a <= pr.rank; ++a) {
      const DgaGen A{pr.a_block, a, -1, pr.p, false};
      const DgaGen B{pr.b_block, a, -1, k.n - 1 - pr.p, false};
      out += R(A) * Lf(B);
      DgaExpr t = R(B) * Lf(A);
      if (sign_power(k.n * pr.p) > 0)
        out -= t;
      else
        out += t;
    }
  const int q = (k.n - 1) / 2;
  for (const auto& sb : k.self_blocks)
    for (std::size_t a = 0; a < sb.k.size(); ++a)
      for (std::size_t b = 0; b < sb.k.size(); ++b) {
        if (sb.k[a][b] == 0) continue;
        const DgaGen Aa{sb.block, static_cast<int>(a + 1), -1, q, false};
        const DgaGen Ab{sb.block, static_cast<int>(b + 1), -1, q, false};
        out += scaled(R(Aa) * Lf(Ab), sb.k[a][b]);
      }
  return out;
}

}  // namespace

DgaExpr superfield_bracket(const KineticAction& k, const DgaExpr& L, const DgaExpr& M) {
  const DgaContext ctx{k.n, kinetic_base_dim(k), true};
  return pair_sum(
      k, [&](const DgaGen& x) { return var_right(L, x, ctx); },
      [&](const DgaGen& x) { return var_left(M, x, ctx); });
}

DgaExpr s0_action_on(const KineticAction& k, const DgaExpr& X) {
  const DgaContext ctx{k.n, kinetic_base_dim(k), true};
  const DgaExpr L = kinetic_density(k);
  return pair_sum(
      k, [&](const DgaGen& x) { return var_right(L, x, ctx); },
      [&](const DgaGen& x) { return partial_left(X, x); });
}

KineticMasterReport kinetic_master(const KineticAction& k) {
  KineticMasterReport rep;
  const DgaExpr L = kinetic_density(k);
  rep.density = superfield_bracket(k, L, L);
  rep.integral = integrate(expand_components(rep.density, k.n, kinetic_base_dim(k)), k.n);
  rep.pass = rep.integral.vanishes();
  return rep;
}

DgaExpr random_component_expr(const std::vector<DgaGen>& gens, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 4), len(1, 3), num(-3, 3);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  DgaExpr out;
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    DgaExpr term = DgaExpr::constant(CoeffPoly::constant(num(rng)));
    const int l = len(rng);
    for (int i = 0; i < l; ++i) term = truncate(term * dga_var(gens[pick(rng)]), n);
    out += term;
  }
  return out;
}

}  // namespace bvdeform
