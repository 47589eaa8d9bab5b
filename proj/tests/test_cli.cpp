#include <random>

#include "bvdeform/cli.hpp"
#include "doctest.h"
#include "fixtures_path.hpp"
#include "json.hpp"

using namespace bvdeform;

namespace {

int error_line(const std::string& text) {
  try {
    (void)parse_model(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

std::string error_message(const std::string& text) {
  try {
    (void)parse_model(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

ModelFile fixture(const std::string& name) { return parse_model(read_file(fixture_path(name))); }

std::string stem(const std::string& name) { return name.substr(0, name.find('.')); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("minimal Poisson sigma model file") {
    const ModelFile m = parse_model("[model]\nn = 2\nd = 3\n");
    CHECK(m.spec == ModelSpec{2, 3, Flavor::bf, {}, std::nullopt});
    CHECK_FALSE(m.has_data);
    CHECK(m.symmetries.empty());
  }

  TEST_CASE("comments, blank lines and spacing are ignored") {
    const ModelFile m = parse_model("# header\n\n[model]   \n  n=3 # dimension\nflavor = cs_bf\nd=1\ncs_rank=2\nmetric = 2 1 ; 1 3\n");
    REQUIRE(m.spec.cs_block.has_value());
    CHECK(m.spec.cs_block->k == RationalMatrix{{2, 1}, {1, 3}});
  }

  TEST_CASE("diagnostics carry line and column") {
    CHECK(error_line("[model]\nn = 4\nd = 2\ncs_rank = 2\n") == 4);
    CHECK(error_message("[model]\nn = 4\nd = 2\ncs_rank = 2\n").find("odd") != std::string::npos);
    try {
      (void)parse_model("[model]\nn = x\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 5);
    }
    CHECK(error_line("n = 2\n") == 1);
    CHECK(error_line("[model]\nn = 2\nd = 1\n[data]\nf[1,2] = phi1 +\n") == 5);
    CHECK(error_line("[model]\nn = 2\nd = 1\nfoo = 3\n") == 4);
    CHECK(error_line("[model]\nn = 2\n") == 1);
    CHECK(error_line("[model]\nn = 2\nd = 2\n[other]\n") == 4);
  }

  TEST_CASE("data errors") {
    const std::string head = "[model]\nn = 2\nd = 2\n[data]\n";
    CHECK(error_message(head + "g[1,2] = 1\n").find("unknown family") != std::string::npos);
    CHECK(error_message(head + "f[1,3] = 1\n").find("outside") != std::string::npos);
    CHECK(error_message(head + "f[1,2] = phi3\n").find("phi3") != std::string::npos);
    CHECK(error_message(head + "f[1,2] = phi1\nf[2,1] = phi1\n").find("line 6") != std::string::npos);
    CHECK(error_message(head + "f[1,1] = 1\n").find("line 5") != std::string::npos);
    CHECK(error_message("[model]\nn = 2\nd = 3\n[data]\nf[1,2] = 1\n").find("f[1,3]") != std::string::npos);
  }

  TEST_CASE("symmetry declarations are checked against the model") {
    const std::string head = "[model]\nn = 3\nd = 1\nblock 1 2\n[symmetry]\n";
    CHECK_NOTHROW(parse_model(head + "f4 antisym 1 2\nf3 antisym 1 2 3\n"));
    CHECK(error_message(head + "f4 sym 1 2\n").find("symmetry violation") != std::string::npos);
    CHECK(error_message(head + "f4 antisym 2 3\n").find("symmetry violation") != std::string::npos);
    CHECK(error_line(head + "f9 antisym 1 2\n") == 6);
    CHECK(error_line(head + "f4 antisym 1 4\n") == 6);
  }

  TEST_CASE("polynomial grammar") {
    const auto none = [](const std::string&) -> FamilyPtr { return nullptr; };
    const CoeffPoly x = CoeffPoly::base_var(1), y = CoeffPoly::base_var(2);
    CHECK(parse_polynomial("phi1^2 - 1/2*phi2", none) == x * x - CoeffPoly::constant(Rational(1, 2)) * y);
    CHECK(parse_polynomial("-(phi1 + 2)*(phi1 - 2)", none) == CoeffPoly::constant(4) - x * x);
    CHECK(parse_polynomial("3/6", none) == CoeffPoly::constant(Rational(1, 2)));
    CHECK(parse_polynomial("phi2^0", none) == CoeffPoly::constant(1));
    CHECK_THROWS_AS(parse_polynomial("phi1 phi2", none), ParseError);
    CHECK_THROWS_AS(parse_polynomial("f[1,2]", none), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1/0", none), ParseError);
    CHECK_THROWS_AS(parse_polynomial("phi0", none), ParseError);
  }

  TEST_CASE("polynomial printing and parsing round trip") {
    const S1Ansatz s1 = build_S1_generic(ModelSpec{3, 2, Flavor::bf, {{1, 2}}, std::nullopt});
    const FamilyResolver resolve = ansatz_resolver(s1);
    const PStructure P = make_pstructure(ModelSpec{3, 2, Flavor::bf, {{1, 2}}, std::nullopt});
    for (const auto& id : extract_identities(P, s1).equations)
      CHECK(parse_polynomial(id.equation.to_string(), resolve) == id.equation);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
      CoeffPoly p;
      for (int k = 0; k < 4; ++k) {
        Rational c(static_cast<int>(rng() % 11) - 5, 1 + static_cast<int>(rng() % 4));
        c.canonicalize();
        CoeffPoly term = CoeffPoly::constant(c);
        for (int e = 0; e < static_cast<int>(rng() % 4); ++e) term = term * CoeffPoly::base_var(1 + static_cast<int>(rng() % 3));
        p += term;
      }
      CHECK(parse_polynomial(p.to_string(), resolve) == p);
    }
  }

  TEST_CASE("parse-print-parse on every fixture") {
    for (const char* name : kFixtures) {
      CAPTURE(name);
      const ModelFile a = fixture(name);
      const std::string printed = print_model(a);
      const ModelFile b = parse_model(printed);
      CHECK(b.spec == a.spec);
      CHECK(b.symmetries == a.symmetries);
      CHECK(b.has_data == a.has_data);
      CHECK(b.data.values() == a.data.values());
      CHECK(print_model(b) == printed);
    }
  }

  TEST_CASE("so(3) data verifies through the command layer") {
    const CommandOutcome out = run_command("verify-data", fixture("so3.model"), {});
    CHECK(out.exit_code == 0);
  }

  TEST_CASE("command examples") {
    const ModelFile n2 = parse_model("[model]\nn = 2\nd = 3\n");
    const CommandOutcome ex = run_command("extract-identities", n2, {});
    CHECK(ex.exit_code == 0);
    const auto j = nlohmann::json::parse(ex.output);
    CHECK(j["details"].size() == 1);
    CHECK(j["details"][0]["equation"].is_string());

    const CommandOutcome cmp = run_command("compare-identities", fixture("courant_exact.model"), {});
    CHECK(cmp.exit_code == 0);
    CHECK(nlohmann::json::parse(cmp.output)["details"][0]["relation"] == "equal");

    const CommandOutcome cm = run_command("check-master", fixture("bivector_fail.model"), {});
    CHECK(cm.exit_code == 1);
    const auto w = nlohmann::json::parse(cm.output)["witnesses"];
    REQUIRE(w.size() == 1);
    CHECK(w[0]["monomial"] == "B1_1*B1_2*B1_3");
    CHECK(w[0]["coefficient"] == "-2*phi1");
  }

  TEST_CASE("report schema") {
    const CommandOutcome out = run_command("first-order", fixture("so3.model"), {});
    const auto j = nlohmann::ordered_json::parse(out.output);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"command", "spec", "seed", "result", "details", "witnesses"});
    CHECK(j["details"].is_array());
    CHECK(j["witnesses"].is_array());
  }

  TEST_CASE("usage errors exit with 2") {
    const ModelFile n2 = parse_model("[model]\nn = 2\nd = 3\n");
    CHECK(run_command("verify-data", n2, {}).exit_code == 2);
    CHECK(run_command("check-algebroid", n2, {}).exit_code == 2);
    CHECK(run_command("nonsense", n2, {}).exit_code == 2);
    CommandOptions bad;
    bad.format = "xml";
    CHECK(run_command("theorem1", n2, bad).exit_code == 2);
    CommandOptions missing;
    missing.against = "/nonexistent/report.json";
    CHECK(run_command("compare-identities", n2, missing).exit_code == 2);
    CHECK(run_command_on_file("theorem1", "/nonexistent/model", {}).exit_code == 2);
    CHECK(run_command("compare-identities", parse_model("[model]\nn = 4\nd = 1\nblock 1 1\n"), {}).exit_code == 2);
  }

  TEST_CASE("identity reports load back as the same span") {
    const ModelFile m = fixture("cs_quadratic_lie.model");
    const std::string path = std::string(BVDEFORM_BINARY_DIR) + "/cs_ids.json";
    {
      std::ofstream out(path);
      out << run_command("extract-identities", m, {}).output;
    }
    const IdentitySet loaded = load_identity_report(path, m.spec);
    const IdentitySet ours = extract_identities(make_pstructure(m.spec), build_S1_generic(m.spec));
    CHECK(compare_identity_spans(ours, loaded).relation == SpanRelation::equal);
    CommandOptions opt;
    opt.against = path;
    CHECK(run_command("compare-identities", m, opt).exit_code == 0);
  }

  TEST_CASE("text format") {
    CommandOptions opt;
    opt.format = "text";
    const CommandOutcome out = run_command("verify-data", fixture("bivector_fail.model"), opt);
    CHECK(out.exit_code == 1);
    CHECK(out.output.find("result: fail") != std::string::npos);
    CHECK(out.output.find("witness: monomial=B1_1*B1_2*B1_3 coefficient=-2*phi1") != std::string::npos);
  }

  TEST_CASE("golden reports are byte-identical and deterministic") {
    for (const char* name : kFixtures)
      for (const auto& cmd : command_names()) {
        CAPTURE(name);
        CAPTURE(cmd);
        const ModelFile m = fixture(name);
        const CommandOutcome a = run_command(cmd, m, {});
        const CommandOutcome b = run_command(cmd, m, {});
        CHECK(a.output == b.output);
        if (a.exit_code == 2) continue;
        CHECK(a.output == read_file(golden_path(stem(name) + "." + cmd + ".json")));
      }
  }

  TEST_CASE("the seed reaches randomized checks") {
    const ModelFile m = parse_model("[model]\nn = 3\nd = 1\nblock 1 1\n");
    CommandOptions a, b;
    a.trials = b.trials = 5;
    b.seed = 99;
    const auto ja = nlohmann::json::parse(run_command("check-bv", m, a).output);
    const auto jb = nlohmann::json::parse(run_command("check-bv", m, b).output);
    CHECK(ja["seed"] == 0);
    CHECK(jb["seed"] == 99);
    CHECK(run_command("check-bv", m, a).output == run_command("check-bv", m, a).output);
  }
}
