#include "bvdeform/master.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bvdeform/linalg.hpp"

namespace bvdeform {

Expr expand_master(const PStructure& P, const Action& S1) {
  if (S1.declared_total_degree != P.n())
    throw std::invalid_argument("S1 must have total degree n = " + std::to_string(P.n()));
  auto deg = total_degree(S1.expr);
  if (!deg || (!S1.expr.is_zero() && *deg != P.n()))
    throw std::invalid_argument("S1 is not homogeneous of total degree " + std::to_string(P.n()));
  return antibracket(P, S1.expr, S1.expr);
}

namespace {

std::vector<std::string> alphabet_of(const S1Ansatz& s1) {
  std::vector<std::string> out;
  for (const auto& f : s1.families) out.push_back(f.family->name);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

IdentitySet extract_identities(const PStructure& P, const S1Ansatz& S1) {
  IdentitySet out;
  out.provenance = "extracted";
  out.alphabet = alphabet_of(S1);
  const Expr residual = expand_master(P, S1.action);
  for (const auto& [m, c] : residual.terms())
    out.equations.push_back({m.to_string(), c});
  return out;
}

PaperIdentities parse_paper_identities(const std::string& name) {
  if (name == "n2_jacobi") return PaperIdentities::n2_jacobi;
  if (name == "n3_bf") return PaperIdentities::n3_bf;
  if (name == "n3_cs") return PaperIdentities::n3_cs;
  throw std::invalid_argument("unknown identity family '" + name + "'");
}

std::string to_string(PaperIdentities which) {
  switch (which) {
    case PaperIdentities::n2_jacobi: return "n2_jacobi";
    case PaperIdentities::n3_bf: return "n3_bf";
    case PaperIdentities::n3_cs: return "n3_cs";
  }
  return "";
}

PaperIdentities paper_identities_for(const ModelSpec& spec) {
  if (spec.n == 2) return PaperIdentities::n2_jacobi;
  if (spec.n == 3 && spec.flavor == Flavor::bf && spec.bf_blocks.size() == 1)
    return PaperIdentities::n3_bf;
  if (spec.n == 3 && spec.flavor == Flavor::cs_bf && spec.bf_blocks.empty())
    return PaperIdentities::n3_cs;
  throw std::invalid_argument("no displayed identity system for this model (n=" +
                              std::to_string(spec.n) + ", " + to_string(spec.flavor) + ")");
}

namespace {

using IndexFn = std::function<CoeffPoly(const std::vector<int>&)>;

int permutation_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return sign_power(inv);
}

/// Antisymmetrizes fn over the values idx, which fill consecutive slot groups of the given
/// sizes. Under the shuffle convention only placements increasing inside each group count.
CoeffPoly antisym(const std::vector<int>& idx, const std::vector<int>& sizes, Antisymmetrization conv,
                  const IndexFn& fn) {
  std::vector<int> perm(idx.size());
  std::iota(perm.begin(), perm.end(), 0);
  CoeffPoly out;
  do {
    if (conv == Antisymmetrization::shuffle) {
      bool ok = true;
      std::size_t start = 0;
      for (int s : sizes) {
        for (std::size_t k = start + 1; k < start + s; ++k)
          if (perm[k - 1] > perm[k]) ok = false;
        start += s;
      }
      if (!ok) continue;
    }
    std::vector<int> vals;
    for (int p : perm) vals.push_back(idx[p]);
    CoeffPoly t = fn(vals);
    out += permutation_sign(perm) > 0 ? t : -t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

CoeffPoly sum_over(int range, const std::function<CoeffPoly(int)>& fn) {
  CoeffPoly out;
  for (int e = 1; e <= range; ++e) out += fn(e);
  return out;
}

/// Calls emit for every assignment of the free indices with the given ranges.
void for_each_index(const std::vector<int>& ranges,
                    const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> idx(ranges.size(), 1);
  while (true) {
    emit(idx);
    int s = static_cast<int>(ranges.size()) - 1;
    while (s >= 0 && idx[s] == ranges[s]) idx[s--] = 1;
    if (s < 0) return;
    ++idx[s];
  }
}

struct Symbols {
  const S1Ansatz& s1;
  CoeffPoly operator()(const std::string& name, std::vector<int> idx, std::vector<int> deriv = {}) const {
    const AnsatzFamily* f = find_family(s1, name);
    if (!f) throw std::logic_error("ansatz has no family " + name);
    return CoeffPoly::symbol(f->family, std::move(idx), std::move(deriv));
  }
};

std::string tag_of(const std::string& label, const std::vector<std::string>& names,
                   const std::vector<int>& idx) {
  std::string t = label + ":";
  for (std::size_t k = 0; k < names.size(); ++k)
    t += (k ? "," : "") + names[k] + "=" + std::to_string(idx[k]);
  return t;
}

}  // namespace

IdentitySet transcribe_paper_identities(PaperIdentities which, const ModelSpec& spec,
                                        Antisymmetrization conv) {
  if (paper_identities_for(spec) != which)
    throw std::invalid_argument("identity family " + to_string(which) + " does not fit the model");
  const S1Ansatz s1 = build_S1_generic(spec);
  const Symbols f{s1};
  IdentitySet out;
  out.provenance = "transcribed:" + to_string(which);
  out.alphabet = alphabet_of(s1);
  const int d = spec.d;
  auto add = [&](const std::string& label, const std::vector<std::string>& names,
                 const std::vector<int>& ranges, const IndexFn& fn) {
    for_each_index(ranges, [&](const std::vector<int>& idx) {
      CoeffPoly eq = fn(idx);
      if (!eq.is_zero()) out.equations.push_back({tag_of(label, names, idx), std::move(eq)});
    });
  };

  if (which == PaperIdentities::n2_jacobi) {
    add("jacobi", {"i", "j", "k"}, {d, d, d}, [&](const std::vector<int>& x) {
      const int i = x[0], j = x[1], k = x[2];
      return sum_over(d, [&](int l) {
        return f("f", {k, l}) * f("f", {i, j}, {l}) + f("f", {i, l}) * f("f", {j, k}, {l}) +
               f("f", {j, l}) * f("f", {k, i}, {l});
      });
    });
    return out;
  }

  if (which == PaperIdentities::n3_cs) {
    const int r = spec.cs_block->rank;
    const RationalMatrix& k = spec.cs_block->k;
    auto kk = [&](int a, int b) { return k[a - 1][b - 1]; };
    auto kf = [&](const std::function<CoeffPoly(int, int)>& fn) {
      CoeffPoly s;
      for (int e = 1; e <= r; ++e)
        for (int g = 1; g <= r; ++g)
          if (kk(e, g) != 0) s += fn(e, g) * kk(e, g);
      return s;
    };
    add("cs1", {"i", "j"}, {d, d}, [&](const std::vector<int>& x) {
      return kf([&](int a, int b) { return f("f1", {a, x[0]}) * f("f1", {b, x[1]}); });
    });
    add("cs2", {"i", "b", "c"}, {d, r, r}, [&](const std::vector<int>& x) {
      const int i = x[0], b = x[1], c = x[2];
      return sum_over(d, [&](int j) {
               return f("f1", {b, i}, {j}) * f("f1", {c, j}) - f("f1", {c, i}, {j}) * f("f1", {b, j});
             }) +
             kf([&](int e, int g) { return f("f1", {e, i}) * f("f2", {g, b, c}); });
    });
    add("cs3", {"a", "b", "c", "d"}, {r, r, r, r}, [&](const std::vector<int>& x) {
      const int a = x[0], b = x[1], c = x[2], dd = x[3];
      return sum_over(d, [&](int j) {
               return f("f1", {dd, j}) * f("f2", {a, b, c}, {j}) -
                      f("f1", {c, j}) * f("f2", {dd, a, b}, {j}) +
                      f("f1", {b, j}) * f("f2", {c, dd, a}, {j}) -
                      f("f1", {a, j}) * f("f2", {b, c, dd}, {j});
             }) +
             kf([&](int e, int g) {
               return f("f2", {e, a, b}) * f("f2", {c, dd, g}) + f("f2", {e, a, c}) * f("f2", {dd, b, g}) +
                      f("f2", {e, a, dd}) * f("f2", {b, c, g});
             });
    });
    return out;
  }

  const int r = spec.bf_blocks.front().rank;
  auto sum_e = [&](const std::function<CoeffPoly(int)>& fn) { return sum_over(r, fn); };
  auto sum_j = [&](const std::function<CoeffPoly(int)>& fn) { return sum_over(d, fn); };

  add("bf1", {"i", "j"}, {d, d}, [&](const std::vector<int>& x) {
    const int i = x[0], j = x[1];
    return sum_e([&](int e) { return f("f1", {e, i}) * f("f2", {j, e}) + f("f2", {i, e}) * f("f1", {e, j}); });
  });
  add("bf2", {"i", "b", "c"}, {d, r, r}, [&](const std::vector<int>& x) {
    const int i = x[0], b = x[1], c = x[2];
    return sum_j([&](int j) {
             return -(f("f1", {c, i}, {j}) * f("f1", {b, j})) + f("f1", {b, i}, {j}) * f("f1", {c, j});
           }) +
           sum_e([&](int e) { return f("f1", {e, i}) * f("f4", {b, c, e}) + f("f2", {i, e}) * f("f3", {e, b, c}); });
  });
  add("bf3", {"i", "b", "c"}, {d, r, r}, [&](const std::vector<int>& x) {
    const int i = x[0], b = x[1], c = x[2];
    return sum_j([&](int j) {
             return f("f1", {b, j}) * f("f2", {i, c}, {j}) - f("f2", {j, c}) * f("f1", {b, i}, {j});
           }) +
           sum_e([&](int e) { return f("f1", {e, i}) * f("f5", {b, e, c}) - f("f2", {i, e}) * f("f4", {e, b, c}); });
  });
  add("bf4", {"i", "b", "c"}, {d, r, r}, [&](const std::vector<int>& x) {
    const int i = x[0], b = x[1], c = x[2];
    return sum_j([&](int j) {
             return -(f("f2", {j, b}) * f("f2", {i, c}, {j})) + f("f2", {j, c}) * f("f2", {i, b}, {j});
           }) +
           sum_e([&](int e) { return f("f1", {e, i}) * f("f6", {e, b, c}) + f("f2", {i, e}) * f("f5", {e, b, c}); });
  });
  const std::vector<std::string> abcd = {"a", "b", "c", "d"};
  const std::vector<int> rrrr = {r, r, r, r};
  add("bf5", abcd, rrrr, [&](const std::vector<int>& x) {
    const int a = x[0], b = x[1], c = x[2], dd = x[3];
    CoeffPoly s = -antisym({a, b, c}, {1, 2}, conv, [&](const std::vector<int>& y) {
      return sum_j([&](int j) { return f("f1", {y[0], j}) * f("f4", {y[1], y[2], dd}, {j}); });
    });
    s += sum_j([&](int j) { return f("f2", {j, dd}) * f("f3", {a, b, c}, {j}); });
    s += antisym({a, b, c}, {1, 2}, conv, [&](const std::vector<int>& y) {
      return sum_e([&](int e) { return f("f4", {e, y[0], dd}) * f("f4", {y[1], y[2], e}); });
    });
    s += antisym({a, b, c}, {2, 1}, conv, [&](const std::vector<int>& y) {
      return sum_e([&](int e) { return f("f3", {e, y[0], y[1]}) * f("f5", {y[2], dd, e}); });
    });
    return s;
  });
  add("bf6", abcd, rrrr, [&](const std::vector<int>& x) {
    const int a = x[0], b = x[1], c = x[2], dd = x[3];
    CoeffPoly s = -antisym({a, b}, {1, 1}, conv, [&](const std::vector<int>& y) {
      return sum_j([&](int j) { return f("f1", {y[0], j}) * f("f5", {y[1], c, dd}, {j}); });
    });
    s -= antisym({c, dd}, {1, 1}, conv, [&](const std::vector<int>& y) {
      return sum_j([&](int j) { return f("f2", {j, y[0]}) * f("f4", {a, b, y[1]}, {j}); });
    });
    s += sum_e([&](int e) { return f("f3", {e, a, b}) * f("f6", {e, c, dd}); });
    s += antisym({a, b}, {1, 1}, conv, [&](const std::vector<int>& y) {
      return antisym({dd, c}, {1, 1}, conv, [&](const std::vector<int>& z) {
        return sum_e([&](int e) { return f("f4", {e, y[0], z[0]}) * f("f5", {y[1], z[1], e}); });
      });
    });
    s += sum_e([&](int e) { return f("f4", {a, b, e}) * f("f5", {e, c, dd}); });
    return s;
  });
  add("bf7", abcd, rrrr, [&](const std::vector<int>& x) {
    const int a = x[0], b = x[1], c = x[2], dd = x[3];
    CoeffPoly s = -sum_j([&](int j) { return f("f1", {a, j}) * f("f6", {b, c, dd}, {j}); });
    s += antisym({b, c, dd}, {1, 2}, conv, [&](const std::vector<int>& y) {
      return sum_j([&](int j) { return f("f2", {j, y[0]}) * f("f5", {a, y[1], y[2]}, {j}); });
    });
    s += antisym({b, c, dd}, {1, 2}, conv, [&](const std::vector<int>& y) {
      return sum_e([&](int e) { return f("f4", {e, a, y[0]}) * f("f6", {y[1], y[2], e}); });
    });
    s += antisym({b, c, dd}, {2, 1}, conv, [&](const std::vector<int>& y) {
      return sum_e([&](int e) { return f("f5", {e, y[0], y[1]}) * f("f5", {a, y[2], e}); });
    });
    return s;
  });
  add("bf8", abcd, rrrr, [&](const std::vector<int>& x) {
    CoeffPoly s = -antisym(x, {1, 3}, conv, [&](const std::vector<int>& y) {
      return sum_j([&](int j) { return f("f2", {j, y[0]}) * f("f6", {y[1], y[2], y[3]}, {j}); });
    });
    s += antisym(x, {2, 2}, conv, [&](const std::vector<int>& y) {
      return sum_e([&](int e) { return f("f6", {e, y[0], y[1]}) * f("f5", {e, y[2], y[3]}); });
    });
    return s;
  });
  add("bf9", abcd, rrrr, [&](const std::vector<int>& x) {
    CoeffPoly s = -antisym(x, {1, 3}, conv, [&](const std::vector<int>& y) {
      return sum_j([&](int j) { return f("f1", {y[0], j}) * f("f3", {y[1], y[2], y[3]}, {j}); });
    });
    s += antisym(x, {2, 2}, conv, [&](const std::vector<int>& y) {
      return sum_e([&](int e) { return f("f4", {y[0], y[1], e}) * f("f3", {y[2], y[3], e}); });
    });
    return s;
  });
  return out;
}

std::string to_string(SpanRelation r) {
  switch (r) {
    case SpanRelation::equal: return "equal";
    case SpanRelation::a_in_b: return "A<B";
    case SpanRelation::b_in_a: return "B<A";
    case SpanRelation::incomparable: return "incomparable";
  }
  return "";
}

SpanComparison compare_identity_spans(const IdentitySet& a, const IdentitySet& b) {
  std::vector<std::string> sa = a.alphabet, sb = b.alphabet;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) throw std::invalid_argument("identity sets use different symbol alphabets");
  std::set<std::string> names(sa.begin(), sa.end());
  for (const auto* set : {&a, &b})
    for (const auto& eq : set->equations)
      for (const auto& s : eq.equation.symbols())
        if (!names.count(s.name()))
          throw std::invalid_argument("symbol " + s.to_string() + " is outside the declared alphabet");

  CoeffBasis basis;
  RowSpace ra, rb;
  std::vector<SparseVec> va, vb;
  for (const auto& eq : a.equations) {
    va.push_back(basis.vectorize(eq.equation));
    ra.insert(va.back());
  }
  for (const auto& eq : b.equations) {
    vb.push_back(basis.vectorize(eq.equation));
    rb.insert(vb.back());
  }
  SpanComparison out;
  out.rank_a = ra.rank();
  out.rank_b = rb.rank();
  std::optional<std::size_t> a_outside, b_outside;
  for (std::size_t k = 0; k < va.size() && !a_outside; ++k)
    if (!rb.contains(va[k])) a_outside = k;
  for (std::size_t k = 0; k < vb.size() && !b_outside; ++k)
    if (!ra.contains(vb[k])) b_outside = k;
  if (!a_outside && !b_outside) {
    out.relation = SpanRelation::equal;
  } else if (!a_outside) {
    out.relation = SpanRelation::a_in_b;
    out.witness = b.equations[*b_outside];
    out.witness_side = "b";
  } else if (!b_outside) {
    out.relation = SpanRelation::b_in_a;
    out.witness = a.equations[*a_outside];
    out.witness_side = "a";
  } else {
    out.relation = SpanRelation::incomparable;
    out.witness = a.equations[*a_outside];
    out.witness_side = "a";
  }
  return out;
}

VerifyReport verify_structure_data(const PStructure& P, const Action& S1, const StructureData& data) {
  Action concrete{substitute(S1.expr, data), S1.declared_total_degree};
  VerifyReport rep;
  const Expr residual = expand_master(P, concrete);
  for (const auto& [m, c] : residual.terms()) rep.residuals.push_back({m.to_string(), c});
  rep.pass = rep.residuals.empty();
  return rep;
}

}  // namespace bvdeform
