#include "bvdeform/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "bvdeform/algebroid.hpp"
#include "bvdeform/worldsheet.hpp"

namespace bvdeform {

using Json = nlohmann::ordered_json;

namespace {

/// Raised for conditions that map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json spec_echo(const ModelFile& m) {
  Json s;
  s["n"] = m.spec.n;
  s["flavor"] = to_string(m.spec.flavor);
  s["d"] = m.spec.d;
  Json blocks = Json::array();
  for (const auto& b : m.spec.bf_blocks) blocks.push_back({{"p", b.p}, {"rank", b.rank}});
  s["blocks"] = blocks;
  if (m.spec.cs_block) {
    Json rows = Json::array();
    for (const auto& row : m.spec.cs_block->k) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(to_string(x));
      rows.push_back(r);
    }
    s["cs"] = {{"rank", m.spec.cs_block->rank}, {"metric", rows}};
  } else {
    s["cs"] = nullptr;
  }
  s["data_components"] = m.has_data ? static_cast<int>(m.data.values().size()) : 0;
  return s;
}

Json law_json(const std::string& group, const LawResult& r) {
  Json j;
  if (!group.empty()) j["group"] = group;
  j["law"] = r.law;
  j["checked"] = r.checked;
  j["failures"] = r.failures;
  j["result"] = r.pass() ? "pass" : "fail";
  return j;
}

Json residual_witnesses(const VerifyReport& v) {
  Json w = Json::array();
  for (const auto& [mono, coeff] : v.residuals) w.push_back({{"monomial", mono}, {"coefficient", coeff.to_string()}});
  return w;
}

Json residual_witnesses(const Expr& e) {
  Json w = Json::array();
  for (const auto& [m, c] : e.terms()) w.push_back({{"monomial", m.to_string()}, {"coefficient", c.to_string()}});
  return w;
}

const StructureData& require_data(const ModelFile& m, const std::string& command) {
  if (!m.has_data) throw UsageError(command + " needs a [data] section in the model");
  return m.data;
}

Expr action_for(const ModelFile& m, const S1Ansatz& s1) {
  return m.has_data ? substitute(s1.action.expr, m.data) : s1.action.expr;
}

struct Report {
  bool pass = true;
  Json details = Json::array();
  Json witnesses = Json::array();
};

Report cmd_check_bv(const ModelFile& m, const CommandOptions& opt) {
  const PStructure P = make_pstructure(m.spec);
  const BvCheckReport rep = check_bv_identities(P, opt.trials, opt.seed);
  Report r;
  r.pass = rep.pass();
  auto add = [&](const std::string& group, const std::vector<LawResult>& laws) {
    for (const auto& l : laws) {
      r.details.push_back(law_json(group, l));
      if (!l.pass()) r.witnesses.push_back({{"law", l.law}, {"counterexample", l.counterexample}});
    }
  };
  add("antibracket", rep.antibracket_laws);
  add("laplacian", rep.laplacian_laws);
  return r;
}

Report cmd_check_master(const ModelFile& m, const CommandOptions&) {
  Report r;
  const S0 s0 = build_S0(m.spec);
  const KineticMasterReport k = kinetic_master(s0.kinetic);
  r.details.push_back({{"order", 0}, {"bracket", "(S0,S0)"}, {"result", k.pass ? "pass" : "fail"},
                       {"residual_terms", k.integral.remainder.size()}});
  const S1Ansatz s1 = build_S1_generic(m.spec);
  const FirstOrderReport f = first_order_check(s1.action, m.spec.n, m.spec.d);
  r.details.push_back({{"order", 1}, {"bracket", "(S0,S1)"}, {"result", f.pass ? "pass" : "fail"},
                       {"residual_terms", f.pass ? 0 : f.top.size()}});
  const PStructure P = make_pstructure(m.spec);
  bool second = true;
  std::size_t terms = 0;
  if (m.has_data) {
    const VerifyReport v = verify_structure_data(P, s1.action, m.data);
    second = v.pass;
    terms = v.residuals.size();
    r.witnesses = residual_witnesses(v);
  } else {
    const Expr e = expand_master(P, s1.action);
    second = e.is_zero();
    terms = e.size();
    r.witnesses = residual_witnesses(e);
  }
  r.details.push_back({{"order", 2},
                       {"bracket", m.has_data ? "(S1,S1) with data" : "(S1,S1) generic"},
                       {"result", second ? "pass" : "fail"},
                       {"residual_terms", terms}});
  r.pass = k.pass && f.pass && second;
  return r;
}

Json identity_json(const Identity& id) { return {{"tag", id.tag}, {"equation", id.equation.to_string()}}; }

Report cmd_extract(const ModelFile& m, const CommandOptions&) {
  const IdentitySet ids = extract_identities(make_pstructure(m.spec), build_S1_generic(m.spec));
  Report r;
  for (const auto& id : ids.equations) r.details.push_back(identity_json(id));
  return r;
}

Report cmd_compare(const ModelFile& m, const CommandOptions& opt) {
  const IdentitySet ours = extract_identities(make_pstructure(m.spec), build_S1_generic(m.spec));
  IdentitySet ref;
  if (opt.against == "paper") {
    PaperIdentities which;
    try {
      which = paper_identities_for(m.spec);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    ref = transcribe_paper_identities(which, m.spec);
  } else {
    ref = load_identity_report(opt.against, m.spec);
  }
  SpanComparison c;
  try {
    c = compare_identity_spans(ours, ref);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Report r;
  r.pass = c.relation == SpanRelation::equal;
  r.details.push_back({{"reference", ref.provenance},
                       {"relation", to_string(c.relation)},
                       {"rank_extracted", c.rank_a},
                       {"rank_reference", c.rank_b},
                       {"result", r.pass ? "pass" : "fail"}});
  if (c.witness)
    r.witnesses.push_back({{"side", c.witness_side == "a" ? "extracted" : "reference"},
                           {"tag", c.witness->tag},
                           {"equation", c.witness->equation.to_string()}});
  return r;
}

Report cmd_verify(const ModelFile& m, const CommandOptions&) {
  const StructureData& data = require_data(m, "verify-data");
  const VerifyReport v = verify_structure_data(make_pstructure(m.spec), build_S1_generic(m.spec).action, data);
  Report r;
  r.pass = v.pass;
  r.details.push_back({{"check", "(S1,S1) = 0"}, {"result", v.pass ? "pass" : "fail"},
                       {"residual_terms", v.residuals.size()}});
  r.witnesses = residual_witnesses(v);
  return r;
}

Report cmd_algebroid(const ModelFile& m, const CommandOptions& opt) {
  const StructureData& data = require_data(m, "check-algebroid");
  if (m.spec.n != 2 && m.spec.n != 3) throw UsageError("check-algebroid supports n = 2 and n = 3 only");
  const PStructure P = make_pstructure(m.spec);
  const S1Ansatz s1 = build_S1_generic(m.spec);
  AxiomOptions ao;
  ao.seed = opt.seed;
  const AxiomReport rep = m.spec.n == 2 ? check_lie_algebroid(P, s1.action, data, section_basis(m.spec), ao)
                                        : check_courant(P, s1.action, data, section_basis(m.spec), ao);
  Report r;
  r.pass = rep.pass();
  const std::string kind = m.spec.n == 2 ? "lie" : "courant";
  for (const auto& a : rep.axioms) {
    r.details.push_back(law_json(kind, a));
    if (!a.pass()) r.witnesses.push_back({{"axiom", a.law}, {"counterexample", a.counterexample}});
  }
  return r;
}

Report cmd_table(const ModelFile& m, const CommandOptions&) {
  std::vector<TableEntry> table;
  try {
    table = operation_table(m.spec, action_for(m, build_S1_generic(m.spec)));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Report r;
  for (const auto& t : table)
    r.details.push_back({{"operation", t.operation}, {"left", t.left}, {"right", t.right}, {"value", to_text(t.value)}});
  return r;
}

Report cmd_laplacian(const ModelFile& m, const CommandOptions&) {
  const PStructure P = make_pstructure(m.spec);
  const S1Ansatz s1 = build_S1_generic(m.spec);
  const Expr S = action_for(m, s1);
  const Expr L = bv_laplacian(P, S);
  Report r;
  const auto deg = total_degree(L);
  Json entry = {{"expression", m.has_data ? "Delta S1 with data" : "Delta S1 generic"},
                {"value", to_text(L)},
                {"terms", L.size()}};
  entry["degree"] = L.is_zero() ? Json(nullptr) : (deg ? Json(*deg) : Json("mixed"));
  entry["expected_degree"] = m.spec.n - (m.spec.n - 1);
  r.pass = L.is_zero() || (deg && *deg == 1);
  r.details.push_back(entry);
  return r;
}

Report cmd_theorem1(const ModelFile& m, const CommandOptions&) {
  const int n = m.spec.n;
  Report r;
  auto comps = [n](const char* f, int t) {
    std::vector<DgaGen> v;
    for (int k = 0; k <= n; ++k) v.push_back({f, 1, k, t, false});
    return v;
  };
  for (int tf = 0; tf <= 3; ++tf)
    for (int tg = 0; tg <= 3; ++tg) {
      const auto F = comps("F", tf), G = comps("G", tg);
      const DgaExpr T = theorem1_witness(n, F, G);
      const IntegralClass cls = integrate(theorem1_sum(n, F, G) - apply_delta0(T, DgaContext{n, 1, false}), n);
      const bool ok = cls.vanishes();
      r.pass = r.pass && ok;
      r.details.push_back({{"degree_F", tf}, {"degree_G", tg}, {"witness", T.to_string()}, {"result", ok ? "pass" : "fail"}});
      if (!ok)
        r.witnesses.push_back({{"degree_F", tf}, {"degree_G", tg}, {"remainder", cls.remainder.to_string()}});
    }
  return r;
}

Report cmd_first_order(const ModelFile& m, const CommandOptions&) {
  const S1Ansatz s1 = build_S1_generic(m.spec);
  const FirstOrderReport f = first_order_check(s1.action, m.spec.n, m.spec.d);
  Report r;
  r.pass = f.pass;
  r.details.push_back({{"check", "top form of delta0 S1 is d-exact"},
                       {"top_terms", f.top.size()},
                       {"witness_terms", f.witness.size()},
                       {"result", f.pass ? "pass" : "fail"}});
  if (!f.pass) r.witnesses.push_back({{"detail", f.detail}, {"top", f.top.to_string()}});
  return r;
}

void text_lines(std::ostringstream& o, const std::string& prefix, const Json& j) {
  for (const auto& item : j) {
    o << prefix << ":";
    if (item.is_object()) {
      for (const auto& [k, v] : item.items()) o << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    } else {
      o << " " << item.dump();
    }
    o << "\n";
  }
}

std::string render(const Json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::ostringstream o;
  o << "command: " << report["command"].get<std::string>() << "\n";
  o << "spec: " << report["spec"].dump() << "\n";
  o << "result: " << report["result"].get<std::string>() << "\n";
  text_lines(o, "detail", report["details"]);
  text_lines(o, "witness", report["witnesses"]);
  return o.str();
}

CommandOutcome usage(const std::string& message) { return {2, "error: " + message + "\n"}; }

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"check-bv",        "check-master",  "extract-identities",
                                                 "compare-identities", "verify-data", "check-algebroid",
                                                 "derived-table",   "laplacian",     "theorem1",
                                                 "first-order"};
  return names;
}

CommandOutcome run_command(const std::string& command, const ModelFile& model, const CommandOptions& opt) {
  if (opt.format != "json" && opt.format != "text") return usage("unknown format '" + opt.format + "'");
  if (opt.trials < 1) return usage("--trials must be positive");
  Report r;
  try {
    if (command == "check-bv")
      r = cmd_check_bv(model, opt);
    else if (command == "check-master")
      r = cmd_check_master(model, opt);
    else if (command == "extract-identities")
      r = cmd_extract(model, opt);
    else if (command == "compare-identities")
      r = cmd_compare(model, opt);
    else if (command == "verify-data")
      r = cmd_verify(model, opt);
    else if (command == "check-algebroid")
      r = cmd_algebroid(model, opt);
    else if (command == "derived-table")
      r = cmd_table(model, opt);
    else if (command == "laplacian")
      r = cmd_laplacian(model, opt);
    else if (command == "theorem1")
      r = cmd_theorem1(model, opt);
    else if (command == "first-order")
      r = cmd_first_order(model, opt);
    else
      return usage("unknown command '" + command + "'");
  } catch (const UsageError& e) {
    return usage(e.what());
  } catch (const ParseError& e) {
    return usage(e.what());
  }
  Json report;
  report["command"] = command;
  report["spec"] = spec_echo(model);
  report["seed"] = opt.seed;
  report["result"] = r.pass ? "pass" : "fail";
  report["details"] = r.details;
  report["witnesses"] = r.witnesses;
  return {r.pass ? 0 : 1, render(report, opt.format)};
}

CommandOutcome run_command_on_file(const std::string& command, const std::string& model_path,
                                   const CommandOptions& opt) {
  std::ifstream in(model_path);
  if (!in) return usage("cannot read model file '" + model_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ModelFile model;
  try {
    model = parse_model(buf.str());
  } catch (const ParseError& e) {
    return usage(model_path + ": " + e.what());
  }
  return run_command(command, model, opt);
}

IdentitySet load_identity_report(const std::string& path, const ModelSpec& spec) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read identity report '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("details") || !j["details"].is_array())
    throw UsageError(path + ": expected an identity report with a details array");
  const S1Ansatz s1 = build_S1_generic(spec);
  IdentitySet out;
  out.provenance = path;
  for (const auto& f : s1.families) out.alphabet.push_back(f.family->name);
  std::sort(out.alphabet.begin(), out.alphabet.end());
  const FamilyResolver resolve = ansatz_resolver(s1);
  for (const auto& item : j["details"]) {
    if (!item.is_object() || !item.contains("equation") || !item["equation"].is_string())
      throw UsageError(path + ": every identity needs an equation string");
    Identity id;
    id.tag = item.value("tag", std::string{});
    try {
      id.equation = parse_polynomial(item["equation"].get<std::string>(), resolve);
    } catch (const ParseError& e) {
      throw UsageError(path + ": identity '" + id.tag + "': " + e.what());
    }
    out.equations.push_back(std::move(id));
  }
  return out;
}

}  // namespace bvdeform
