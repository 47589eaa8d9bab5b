#include "bvdeform/pstructure.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace bvdeform {

PStructure::PStructure(int n, std::vector<DarbouxPair> pairs, std::vector<SelfBlock> self_blocks)
    : n_(n), pairs_(std::move(pairs)), self_blocks_(std::move(self_blocks)) {
  if (n_ < 1) throw std::invalid_argument("P-structure dimension n must be >= 1");
  std::set<std::string> labels;
  auto claim = [&](const std::string& label) {
    if (!labels.insert(label).second)
      throw std::invalid_argument("block " + label + " appears in more than one pair");
  };
  for (const auto& pr : pairs_) {
    if (pr.p < 0 || pr.p > n_ - 1)
      throw std::invalid_argument("pair degree p=" + std::to_string(pr.p) + " out of range");
    if (pr.rank < 1) throw std::invalid_argument("block rank must be positive");
    if ((pr.p == 0) != (pr.a_block == kBaseBlock))
      throw std::invalid_argument("the p=0 pair is exactly the base pair (phi, B_{n-1})");
    if (pr.b_block == kBaseBlock) throw std::invalid_argument("phi cannot be a conjugate block");
    claim(pr.a_block);
    claim(pr.b_block);
  }
  if (!self_blocks_.empty() && n_ % 2 == 0)
    throw std::invalid_argument("self-paired blocks require odd n, got n=" + std::to_string(n_));
  const int q = (n_ - 1) / 2;
  for (const auto& sb : self_blocks_) {
    claim(sb.block);
    if (!is_square(sb.k) || sb.k.empty())
      throw std::invalid_argument("metric of block " + sb.block + " must be a nonempty square matrix");
    if (determinant(sb.k) == 0)
      throw std::invalid_argument("metric of block " + sb.block + " is degenerate");
    const int s = sign_power(q + 1);
    for (int a = 0; a < sb.rank(); ++a)
      for (int b = 0; b < sb.rank(); ++b)
        if (sb.k[a][b] != s * sb.k[b][a])
          throw std::invalid_argument(std::string("metric of block ") + sb.block + " must be " +
                                      (s > 0 ? "symmetric" : "antisymmetric") +
                                      " for self-paired degree " + std::to_string(q));
  }
}

PStructure PStructure::cotangent(int n, int base_dim) {
  return PStructure(n, {DarbouxPair{0, std::string(kBaseBlock), "B" + std::to_string(n - 1), base_dim}});
}

int PStructure::base_dim() const {
  for (const auto& pr : pairs_)
    if (pr.p == 0) return pr.rank;
  return 0;
}

GradedVar PStructure::a_var(const DarbouxPair& pair, int index) const {
  return GradedVar{pair.a_block, index, Degree{pair.p}};
}

GradedVar PStructure::b_var(const DarbouxPair& pair, int index) const {
  return GradedVar{pair.b_block, index, Degree{n_ - 1 - pair.p}};
}

GradedVar PStructure::self_var(const SelfBlock& block, int index) const {
  return GradedVar{block.block, index, Degree{self_degree()}};
}

std::vector<GradedVar> PStructure::fiber_variables() const {
  std::vector<GradedVar> out;
  for (const auto& pr : pairs_)
    for (int a = 1; a <= pr.rank; ++a) {
      if (pr.p != 0) out.push_back(a_var(pr, a));
      out.push_back(b_var(pr, a));
    }
  for (const auto& sb : self_blocks_)
    for (int a = 1; a <= sb.rank(); ++a) out.push_back(self_var(sb, a));
  std::sort(out.begin(), out.end());
  return out;
}

Expr antibracket(const PStructure& P, const Expr& F, const Expr& G) {
  check_compatible(F, G);
  Expr out;
  if (F.is_zero() || G.is_zero()) return out;
  const int n = P.n();
  for (const auto& pr : P.pairs()) {
    const int s = sign_power(n * pr.p);
    for (int a = 1; a <= pr.rank; ++a) {
      const GradedVar A = P.a_var(pr, a);
      const GradedVar B = P.b_var(pr, a);
      Expr fa = right_deriv(F, A);
      if (!fa.is_zero()) out += fa * left_deriv(B, G);
      Expr fb = right_deriv(F, B);
      if (!fb.is_zero()) {
        Expr t = fb * left_deriv(A, G);
        if (s > 0)
          out -= t;
        else
          out += t;
      }
    }
  }
  for (const auto& sb : P.self_blocks()) {
    std::vector<Expr> fa, ga;
    for (int a = 1; a <= sb.rank(); ++a) {
      fa.push_back(right_deriv(F, P.self_var(sb, a)));
      ga.push_back(left_deriv(P.self_var(sb, a), G));
    }
    for (int a = 0; a < sb.rank(); ++a) {
      if (fa[a].is_zero()) continue;
      for (int b = 0; b < sb.rank(); ++b) {
        if (sb.k[a][b] == 0 || ga[b].is_zero()) continue;
        out += (fa[a] * ga[b]).scaled_by(CoeffPoly(sb.k[a][b]));
      }
    }
  }
  return out;
}

Expr bv_laplacian(const PStructure& P, const Expr& F) {
  Expr out;
  for (const auto& pr : P.pairs())
    for (int a = 1; a <= pr.rank; ++a)
      out += left_deriv(P.a_var(pr, a), left_deriv(P.b_var(pr, a), F));
  return out;
}

namespace {

std::vector<FiberMonomial> fiber_monomials(const PStructure& P, int degree) {
  std::vector<GradedVar> vars = P.fiber_variables();
  std::vector<FiberMonomial> out;
  FiberMonomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (i == vars.size()) return;
    rec(i + 1, left);
    const GradedVar& v = vars[i];
    const int deg = v.total_degree();
    if (deg <= 0) return;
    const int max_e = v.odd() ? 1 : left / deg;
    for (int e = 1; e <= max_e && e * deg <= left; ++e) {
      cur.factors.emplace_back(v, e);
      rec(i + 1, left - e * deg);
      cur.factors.pop_back();
    }
  };
  rec(0, degree);
  return out;
}

CoeffPoly random_coefficient(int base_dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 2), num(-3, 3), den(1, 2), deg(0, 2);
  std::uniform_int_distribution<int> idx(1, std::max(base_dim, 1));
  CoeffPoly out;
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    int p = num(rng);
    if (p == 0) p = 1;
    Rational c(p, den(rng));
    c.canonicalize();
    CoeffPoly term = CoeffPoly::constant(c);
    if (base_dim > 0) {
      const int d = deg(rng);
      for (int i = 0; i < d; ++i) term = term * CoeffPoly::base_var(idx(rng));
    }
    out += term;
  }
  if (out.is_zero()) out = CoeffPoly::constant(1);
  return out;
}

}  // namespace

std::vector<int> realizable_degrees(const PStructure& P, int max_degree) {
  std::vector<int> out;
  for (int t = 0; t <= max_degree; ++t)
    if (!fiber_monomials(P, t).empty()) out.push_back(t);
  return out;
}

Expr random_homogeneous(const PStructure& P, int degree, std::mt19937_64& rng) {
  std::vector<FiberMonomial> monos = fiber_monomials(P, degree);
  Expr out;
  if (monos.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> count(1, 3);
  const int k = count(rng);
  for (int i = 0; i < k; ++i) out.add_term(monos[pick(rng)], random_coefficient(P.base_dim(), rng));
  return out;
}

bool BvCheckReport::antibracket_pass() const {
  return std::all_of(antibracket_laws.begin(), antibracket_laws.end(),
                     [](const LawResult& l) { return l.pass(); });
}

bool BvCheckReport::laplacian_pass() const {
  return std::all_of(laplacian_laws.begin(), laplacian_laws.end(),
                     [](const LawResult& l) { return l.pass(); });
}

namespace {

void record(LawResult& law, const Expr& residual, const std::string& context) {
  ++law.checked;
  if (residual.is_zero()) return;
  if (law.failures++ == 0) law.counterexample = context + " ; residual = " + to_text(residual);
}

}  // namespace

BvCheckReport check_bv_identities(const PStructure& P, int trials, std::uint64_t seed) {
  const int n = P.n();
  std::mt19937_64 rng(seed);
  std::vector<int> degrees = realizable_degrees(P, n + 1);
  std::uniform_int_distribution<std::size_t> pick(0, degrees.size() - 1);

  LawResult anti{"graded antisymmetry", 0, 0, {}}, lright{"Leibniz (F,GH)", 0, 0, {}}, lleft{"Leibniz (FG,H)", 0, 0, {}},
      jac{"graded Jacobi", 0, 0, {}}, bdeg{"bracket degree |F|+|G|-n+1", 0, 0, {}};
  LawResult dleib{"Delta Leibniz", 0, 0, {}}, dsq{"Delta^2 = 0", 0, 0, {}}, ddeg{"Delta degree |F|-(n-1)", 0, 0, {}};

  for (int t = 0; t < trials; ++t) {
    const int df = degrees[pick(rng)], dg = degrees[pick(rng)], dh = degrees[pick(rng)];
    const Expr F = random_homogeneous(P, df, rng);
    const Expr G = random_homogeneous(P, dg, rng);
    const Expr H = random_homogeneous(P, dh, rng);
    const std::string ctx = "F = " + to_text(F) + " ; G = " + to_text(G) + " ; H = " + to_text(H);
    const int sf = df + 1 - n, sg = dg + 1 - n, sh = dh + 1 - n;

    const Expr FG = antibracket(P, F, G);
    const Expr GF = antibracket(P, G, F);
    record(anti, sign_power(sf * sg) > 0 ? FG + GF : FG - GF, ctx);

    const Expr FH = antibracket(P, F, H);
    const Expr GH = antibracket(P, G, H);
    {
      Expr rhs = FG * H;
      Expr second = G * FH;
      rhs = sign_power(sf * dg) > 0 ? rhs + second : rhs - second;
      record(lright, antibracket(P, F, G * H) - rhs, ctx);
    }
    {
      Expr rhs = F * GH;
      Expr second = FH * G;
      rhs = sign_power(dg * sh) > 0 ? rhs + second : rhs - second;
      record(lleft, antibracket(P, F * G, H) - rhs, ctx);
    }
    {
      const Expr HF = antibracket(P, H, F);
      Expr j1 = antibracket(P, F, GH);
      Expr j2 = antibracket(P, G, HF);
      Expr j3 = antibracket(P, H, FG);
      Expr sum;
      sum += sign_power(sf * sh) > 0 ? j1 : -j1;
      sum += sign_power(sg * sf) > 0 ? j2 : -j2;
      sum += sign_power(sh * sg) > 0 ? j3 : -j3;
      record(jac, sum, ctx);
    }
    {
      ++bdeg.checked;
      auto deg = total_degree(FG);
      if (!FG.is_zero() && (!deg || *deg != df + dg - n + 1) && bdeg.failures++ == 0)
        bdeg.counterexample = ctx + " ; (F,G) = " + to_text(FG);
    }

    const Expr lapF = bv_laplacian(P, F);
    const Expr lapG = bv_laplacian(P, G);
    {
      Expr rhs = lapF * G;
      rhs += sign_power((n + 1) * df) > 0 ? FG : -FG;
      Expr last = F * lapG;
      rhs += sign_power(df) > 0 ? last : -last;
      record(dleib, bv_laplacian(P, F * G) - rhs, ctx);
    }
    record(dsq, bv_laplacian(P, lapF), ctx);
    {
      ++ddeg.checked;
      auto deg = total_degree(lapF);
      if (!lapF.is_zero() && (!deg || *deg != df - (n - 1)) && ddeg.failures++ == 0)
        ddeg.counterexample = ctx + " ; Delta F = " + to_text(lapF);
    }
  }
  BvCheckReport rep;
  rep.antibracket_laws = {anti, lright, lleft, jac, bdeg};
  rep.laplacian_laws = {dleib, dsq, ddeg};
  return rep;
}

}  // namespace bvdeform
