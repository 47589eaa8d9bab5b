#include "bvdeform/models.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace bvdeform {

std::string to_string(Flavor f) { return f == Flavor::bf ? "bf" : "cs_bf"; }

Flavor parse_flavor(const std::string& text) {
  if (text == "bf") return Flavor::bf;
  if (text == "cs_bf") return Flavor::cs_bf;
  throw std::invalid_argument("unknown flavor '" + text + "' (expected bf or cs_bf)");
}

std::string a_label(int p) { return p == 0 ? std::string(kBaseBlock) : "A" + std::to_string(p); }
std::string b_label(int n, int p) { return "B" + std::to_string(n - p - 1); }
std::string self_label(int n) { return "A" + std::to_string((n - 1) / 2); }

void validate(const ModelSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
  if (spec.d < 1) throw std::invalid_argument("base dimension d must be >= 1");
  const int max_p = spec.flavor == Flavor::bf ? (spec.n - 1) / 2 : (spec.n - 3) / 2;
  std::set<int> seen;
  for (const auto& b : spec.bf_blocks) {
    if (b.p < 1 || b.p > max_p)
      throw std::invalid_argument("block p=" + std::to_string(b.p) + " outside 1.." +
                                  std::to_string(std::max(max_p, 0)) + " for n=" +
                                  std::to_string(spec.n) + " (" + to_string(spec.flavor) + ")");
    if (!seen.insert(b.p).second)
      throw std::invalid_argument("block p=" + std::to_string(b.p) + " declared twice");
    if (b.rank < 1) throw std::invalid_argument("block rank must be >= 1");
  }
  if (spec.cs_block && spec.n % 2 == 0)
    throw std::invalid_argument("a Chern-Simons block requires odd n, got n=" +
                                std::to_string(spec.n));
  if (spec.flavor == Flavor::cs_bf) {
    if (!spec.cs_block) throw std::invalid_argument("flavor cs_bf requires a cs block");
    if (spec.n < 3) throw std::invalid_argument("flavor cs_bf requires n >= 3");
    if (spec.cs_block->rank < 1 || static_cast<int>(spec.cs_block->k.size()) != spec.cs_block->rank)
      throw std::invalid_argument("cs metric must be a " + std::to_string(spec.cs_block->rank) +
                                  "x" + std::to_string(spec.cs_block->rank) + " matrix");
  } else if (spec.cs_block) {
    throw std::invalid_argument("flavor bf does not take a cs block");
  }
  make_pstructure(spec);  // metric checks
}

PStructure make_pstructure(const ModelSpec& spec) {
  std::vector<DarbouxPair> pairs;
  pairs.push_back({0, std::string(kBaseBlock), b_label(spec.n, 0), spec.d});
  std::vector<BfBlock> blocks = spec.bf_blocks;
  std::sort(blocks.begin(), blocks.end(), [](const BfBlock& a, const BfBlock& b) { return a.p < b.p; });
  for (const auto& b : blocks) pairs.push_back({b.p, a_label(b.p), b_label(spec.n, b.p), b.rank});
  std::vector<SelfBlock> self;
  if (spec.cs_block) self.push_back({self_label(spec.n), spec.cs_block->k});
  return PStructure(spec.n, std::move(pairs), std::move(self));
}

S0 build_S0(const ModelSpec& spec) {
  validate(spec);
  S0 out;
  out.action.declared_total_degree = spec.n;
  out.kinetic.n = spec.n;
  const PStructure P = make_pstructure(spec);
  for (const auto& pr : P.pairs())
    out.kinetic.pairs.push_back({pr.p, pr.a_block, pr.b_block, pr.rank, sign_power(spec.n - pr.p)});
  if (spec.cs_block)
    out.kinetic.self_blocks.push_back(
        {self_label(spec.n), spec.cs_block->k, inverse(transpose(spec.cs_block->k))});
  return out;
}

namespace {

struct FiberBlock {
  std::string label;
  int degree;
  int rank;
  bool a_type;
};

std::vector<FiberBlock> ansatz_blocks(const ModelSpec& spec) {
  std::vector<FiberBlock> as, bs;
  bs.push_back({b_label(spec.n, 0), spec.n - 1, spec.d, false});
  for (const auto& b : spec.bf_blocks) {
    as.push_back({a_label(b.p), b.p, b.rank, true});
    bs.push_back({b_label(spec.n, b.p), spec.n - 1 - b.p, b.rank, false});
  }
  if (spec.cs_block) as.push_back({self_label(spec.n), (spec.n - 1) / 2, spec.cs_block->rank, true});
  std::sort(as.begin(), as.end(), [](const FiberBlock& x, const FiberBlock& y) { return x.degree < y.degree; });
  std::sort(bs.begin(), bs.end(), [](const FiberBlock& x, const FiberBlock& y) { return x.degree > y.degree; });
  std::vector<FiberBlock> all = as;
  all.insert(all.end(), bs.begin(), bs.end());
  all.erase(std::remove_if(all.begin(), all.end(), [](const FiberBlock& b) { return b.degree <= 0; }),
            all.end());
  return all;
}

std::string family_name(const ModelSpec& spec, const std::vector<std::string>& slot_blocks) {
  std::string key;
  for (const auto& s : slot_blocks) key += (key.empty() ? "" : ",") + s;
  if (spec.n == 2 && key == "B1,B1") return "f";
  if (spec.n == 3 && spec.flavor == Flavor::bf) {
    static const std::map<std::string, std::string> names = {
        {"A1,B2", "f1"},    {"B2,B1", "f2"},    {"A1,A1,A1", "f3"},
        {"A1,A1,B1", "f4"}, {"A1,B1,B1", "f5"}, {"B1,B1,B1", "f6"}};
    if (auto it = names.find(key); it != names.end()) return it->second;
  }
  if (spec.n == 3 && spec.flavor == Flavor::cs_bf) {
    if (key == "A1,B2") return "f1";
    if (key == "A1,A1,A1") return "f2";
  }
  std::string name = "F";
  for (const auto& s : slot_blocks) name += "_" + s;
  return name;
}

}  // namespace

S1Ansatz build_S1_generic(const ModelSpec& spec) {
  validate(spec);
  S1Ansatz out;
  out.action.declared_total_degree = spec.n;
  out.trivial_expected = spec.n == 1;
  const std::vector<FiberBlock> blocks = ansatz_blocks(spec);

  std::vector<int> mult(blocks.size(), 0);
  std::vector<std::vector<int>> multisets;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (left == 0) {
      multisets.push_back(mult);
      return;
    }
    if (i == blocks.size()) return;
    const int deg = blocks[i].degree;
    for (int m = left / deg; m >= 0; --m) {
      mult[i] = m;
      rec(i + 1, left - m * deg);
    }
    mult[i] = 0;
  };
  rec(0, spec.n);

  for (const auto& ms : multisets) {
    AnsatzFamily fam;
    std::vector<IndexPosition> positions;
    std::vector<IndexGroup> groups;
    Rational norm = 1;
    std::vector<GradedVar> slot_template;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (ms[b] == 0) continue;
      IndexGroup g{{}, is_odd(blocks[b].degree)};
      for (int k = 0; k < ms[b]; ++k) {
        g.positions.push_back(static_cast<int>(positions.size()));
        positions.push_back(blocks[b].a_type ? IndexPosition::lower : IndexPosition::upper);
        fam.slot_blocks.push_back(blocks[b].label);
        fam.slot_degrees.push_back(blocks[b].degree);
        fam.slot_ranges.push_back(blocks[b].rank);
        norm /= (k + 1);
      }
      if (ms[b] >= 2) groups.push_back(g);
    }
    fam.family = make_family(family_name(spec, fam.slot_blocks), positions, groups);
    fam.normalization = norm;

    const int arity = fam.family->arity();
    std::vector<int> idx(arity, 1);
    while (true) {
      CoeffPoly c = CoeffPoly::symbol(fam.family, idx);
      if (!c.is_zero()) {
        Expr mono = make_const(1);
        for (int s = 0; s < arity; ++s)
          mono = mono * make_var(GradedVar{fam.slot_blocks[s], idx[s], Degree{fam.slot_degrees[s]}});
        out.action.expr += mono.scaled_by(c * norm);
      }
      int s = arity - 1;
      while (s >= 0 && idx[s] == fam.slot_ranges[s]) idx[s--] = 1;
      if (s < 0) break;
      ++idx[s];
    }
    out.families.push_back(std::move(fam));
  }
  std::sort(out.families.begin(), out.families.end(),
            [](const AnsatzFamily& a, const AnsatzFamily& b) { return a.family->name < b.family->name; });
  return out;
}

DegreeReport validate_degree(const Action& a, const ModelSpec& spec) {
  DegreeReport rep;
  if (a.declared_total_degree != spec.n)
    rep.violations.push_back("declared total degree " + std::to_string(a.declared_total_degree) +
                             " != n = " + std::to_string(spec.n));
  for (const auto& [m, c] : a.expr.terms())
    if (m.degree() != spec.n)
      rep.violations.push_back("term " + m.to_string() + " has total degree " +
                               std::to_string(m.degree()) + " != " + std::to_string(spec.n));
  rep.pass = rep.violations.empty();
  return rep;
}

const AnsatzFamily* find_family(const S1Ansatz& s1, const std::string& name) {
  for (const auto& f : s1.families)
    if (f.family->name == name) return &f;
  return nullptr;
}

}  // namespace bvdeform
