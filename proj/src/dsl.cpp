#include "bvdeform/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace bvdeform {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const FamilyResolver& resolve, int line, int column_offset)
      : s_(text), resolve_(resolve), line_(line), offset_(column_offset) {}

  CoeffPoly parse() {
    CoeffPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, offset_ + static_cast<int>(pos_) + 1, msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 9) fail("integer too large");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }
  std::vector<int> int_list() {
    std::vector<int> out{integer()};
    while (eat(',')) out.push_back(integer());
    return out;
  }

  CoeffPoly expr() {
    CoeffPoly p = term();
    while (true) {
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        return p;
    }
  }
  CoeffPoly term() {
    CoeffPoly p = unary();
    while (eat('*')) p = p * unary();
    return p;
  }
  CoeffPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  CoeffPoly power() {
    CoeffPoly base = atom();
    if (!eat('^')) return base;
    const int e = integer();
    CoeffPoly out = CoeffPoly::constant(1);
    for (int k = 0; k < e; ++k) out = out * base;
    return out;
  }
  CoeffPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      CoeffPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected a denominator");
      }
      std::string lit(s_.substr(start, pos_ - start));
      try {
        return CoeffPoly::constant(parse_rational(lit));
      } catch (const std::exception& e) {
        fail(e.what());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name.size() > 3 && name.compare(0, 3, "phi") == 0 &&
          std::all_of(name.begin() + 3, name.end(), [](char x) { return std::isdigit(static_cast<unsigned char>(x)); })) {
        const int j = std::stoi(name.substr(3));
        if (j < 1) fail("base coordinates start at phi1");
        return CoeffPoly::base_var(j);
      }
      FamilyPtr fam = resolve_ ? resolve_(name) : nullptr;
      if (!fam) {
        pos_ = start;
        fail("unknown symbol '" + name + "'");
      }
      if (!eat('[')) fail("expected '[' after " + name);
      std::vector<int> idx = int_list();
      std::vector<int> deriv;
      if (eat('|')) deriv = int_list();
      if (!eat(']')) fail("expected ']'");
      if (static_cast<int>(idx.size()) != fam->arity())
        fail(name + " takes " + std::to_string(fam->arity()) + " indices");
      return CoeffPoly::symbol(fam, idx, deriv);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const FamilyResolver& resolve_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

int column_of(std::string_view line, std::string_view part) {
  auto p = line.find(part);
  return p == std::string_view::npos ? 1 : static_cast<int>(p) + 1;
}

int to_int(const std::string& tok, int line, int col) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '-'; }))
    throw ParseError(line, col, "expected an integer, got '" + tok + "'");
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw ParseError(line, col, "integer out of range: '" + tok + "'");
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

struct DataLine {
  int line;
  int column;
  std::string lhs;
  std::string rhs;
  int rhs_column;
};

}  // namespace

FamilyResolver ansatz_resolver(const S1Ansatz& s1) {
  return [&s1](const std::string& name) -> FamilyPtr {
    const AnsatzFamily* f = find_family(s1, name);
    return f ? f->family : nullptr;
  };
}

CoeffPoly parse_polynomial(std::string_view text, const FamilyResolver& resolve) {
  return PolyParser(text, resolve, 1, 0).parse();
}

ModelFile parse_model(std::string_view text) {
  ModelFile out;
  enum class Section { none, model, symmetry, data } section = Section::none;
  bool seen_model = false;
  std::optional<int> n, d, cs_rank;
  std::optional<Flavor> flavor;
  std::optional<RationalMatrix> metric;
  int model_line = 1, cs_line = 0;
  std::vector<std::pair<int, SymmetryDecl>> sym_lines;
  std::vector<DataLine> data_lines;
  std::vector<std::pair<int, BfBlock>> blocks;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view full(raw);
    std::string_view body = full.substr(0, full.find('#'));
    const std::string line = trim(body);
    if (line.empty()) continue;
    const int col = column_of(full, line);
    if (line.front() == '[' && line.back() == ']') {
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      Section next;
      if (name == "model")
        next = Section::model;
      else if (name == "symmetry")
        next = Section::symmetry;
      else if (name == "data")
        next = Section::data;
      else
        throw ParseError(lineno, col, "unknown section [" + name + "]");
      if (next == Section::model) {
        if (seen_model) throw ParseError(lineno, col, "duplicate [model] section");
        seen_model = true;
        model_line = lineno;
      } else if (next == Section::data) {
        if (out.has_data) throw ParseError(lineno, col, "duplicate [data] section");
        out.has_data = true;
      }
      section = next;
      continue;
    }
    switch (section) {
      case Section::none:
        throw ParseError(lineno, col, "content before the first section header");
      case Section::model: {
        if (line.compare(0, 6, "block ") == 0 || line == "block") {
          auto toks = split_ws(line);
          if (toks.size() != 3) throw ParseError(lineno, col, "expected 'block <p> <rank>'");
          blocks.push_back({lineno, BfBlock{to_int(toks[1], lineno, column_of(full, toks[1])),
                                            to_int(toks[2], lineno, column_of(full, toks[2]))}});
          break;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, col, "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const int vcol = column_of(full, value);
        if (value.empty()) throw ParseError(lineno, vcol, "missing value for " + key);
        auto once = [&](bool present) {
          if (present) throw ParseError(lineno, col, "duplicate key " + key);
        };
        if (key == "n") {
          once(n.has_value());
          n = to_int(value, lineno, vcol);
        } else if (key == "d") {
          once(d.has_value());
          d = to_int(value, lineno, vcol);
        } else if (key == "flavor") {
          once(flavor.has_value());
          try {
            flavor = parse_flavor(value);
          } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, vcol, e.what());
          }
        } else if (key == "cs_rank") {
          once(cs_rank.has_value());
          cs_rank = to_int(value, lineno, vcol);
          cs_line = lineno;
        } else if (key == "metric") {
          once(metric.has_value());
          RationalMatrix m;
          std::string_view rest(value);
          while (true) {
            auto semi = rest.find(';');
            std::vector<Rational> row;
            for (const auto& tok : split_ws(std::string(rest.substr(0, semi)))) {
              try {
                row.push_back(parse_rational(tok));
              } catch (const std::exception& e) {
                throw ParseError(lineno, column_of(full, tok), e.what());
              }
            }
            m.push_back(std::move(row));
            if (semi == std::string_view::npos) break;
            rest = rest.substr(semi + 1);
          }
          metric = std::move(m);
          if (!cs_line) cs_line = lineno;
        } else {
          throw ParseError(lineno, col, "unknown key '" + key + "'");
        }
        break;
      }
      case Section::symmetry: {
        auto toks = split_ws(line);
        if (toks.size() < 4 || (toks[1] != "antisym" && toks[1] != "sym"))
          throw ParseError(lineno, col, "expected '<family> antisym|sym <slot> <slot> ...'");
        SymmetryDecl decl{toks[0], toks[1] == "antisym", {}};
        for (std::size_t k = 2; k < toks.size(); ++k)
          decl.slots.push_back(to_int(toks[k], lineno, column_of(full, toks[k])));
        sym_lines.push_back({lineno, decl});
        break;
      }
      case Section::data: {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, col, "expected '<symbol> = <polynomial>'");
        const std::string lhs = trim(std::string_view(line).substr(0, eq));
        const std::string rhs = trim(std::string_view(line).substr(eq + 1));
        data_lines.push_back({lineno, col, lhs, rhs, column_of(full, rhs) - 1});
        break;
      }
    }
  }

  if (!seen_model) throw ParseError(lineno + 1, 1, "missing [model] section");
  if (!n) throw ParseError(model_line, 1, "missing key n");
  if (!d) throw ParseError(model_line, 1, "missing key d");
  out.spec.n = *n;
  out.spec.d = *d;
  out.spec.flavor = flavor.value_or(Flavor::bf);
  for (const auto& [l, b] : blocks) out.spec.bf_blocks.push_back(b);
  if (cs_rank || metric) {
    CsBlock cs;
    cs.rank = cs_rank.value_or(metric ? static_cast<int>(metric->size()) : 0);
    cs.k = metric ? *metric : identity_matrix(cs.rank);
    out.spec.cs_block = cs;
  }
  try {
    validate(out.spec);
  } catch (const std::invalid_argument& e) {
    throw ParseError(out.spec.cs_block && cs_line ? cs_line : model_line, 1, e.what());
  }

  const S1Ansatz s1 = build_S1_generic(out.spec);
  for (const auto& [l, decl] : sym_lines) {
    const AnsatzFamily* fam = find_family(s1, decl.family);
    if (!fam) throw ParseError(l, 1, "unknown family '" + decl.family + "'");
    std::vector<int> slots;
    for (int s : decl.slots) {
      if (s < 1 || s > fam->family->arity())
        throw ParseError(l, 1, decl.family + " has no slot " + std::to_string(s));
      slots.push_back(s - 1);
    }
    std::sort(slots.begin(), slots.end());
    bool ok = false;
    for (const auto& g : fam->family->groups)
      if (g.antisymmetric == decl.antisymmetric &&
          std::includes(g.positions.begin(), g.positions.end(), slots.begin(), slots.end()))
        ok = true;
    if (!ok)
      throw ParseError(l, 1, "symmetry violation: " + decl.family + " is not " +
                                 (decl.antisymmetric ? "antisymmetric" : "symmetric") +
                                 " in the given slots for this model");
    out.symmetries.push_back(decl);
  }

  const FamilyResolver resolve = ansatz_resolver(s1);
  const FamilyResolver no_symbols = [](const std::string&) -> FamilyPtr { return nullptr; };
  for (const auto& dl : data_lines) {
    auto br = dl.lhs.find('[');
    if (br == std::string::npos || dl.lhs.back() != ']')
      throw ParseError(dl.line, dl.column, "expected '<family>[i,j,...]' on the left");
    const std::string name = trim(std::string_view(dl.lhs).substr(0, br));
    const AnsatzFamily* fam = find_family(s1, name);
    if (!fam) throw ParseError(dl.line, dl.column, "unknown family '" + name + "'");
    std::vector<int> idx;
    {
      std::string inner = dl.lhs.substr(br + 1, dl.lhs.size() - br - 2);
      std::replace(inner.begin(), inner.end(), ',', ' ');
      for (const auto& tok : split_ws(inner)) idx.push_back(to_int(tok, dl.line, dl.column));
    }
    if (static_cast<int>(idx.size()) != fam->family->arity())
      throw ParseError(dl.line, dl.column, name + " takes " + std::to_string(fam->family->arity()) + " indices");
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (idx[k] < 1 || idx[k] > fam->slot_ranges[k])
        throw ParseError(dl.line, dl.column, "index " + std::to_string(idx[k]) + " of " + name +
                                                 " outside 1.." + std::to_string(fam->slot_ranges[k]));
    CoeffPoly value;
    try {
      value = PolyParser(dl.rhs, no_symbols, dl.line, dl.rhs_column).parse();
    } catch (const ParseError&) {
      throw;
    }
    for (const auto& [m, c] : value.terms())
      for (const auto& [j, e] : m.base)
        if (j > out.spec.d)
          throw ParseError(dl.line, dl.rhs_column + 1, "phi" + std::to_string(j) + " exceeds d = " +
                                                           std::to_string(out.spec.d));
    try {
      out.data.assign(fam->family, idx, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(dl.line, dl.column, e.what());
    }
  }
  if (out.has_data) {
    for (const auto& [m, c] : s1.action.expr.terms())
      for (const auto& [cm, x] : c.terms())
        for (const auto& s : cm.symbols)
          if (!out.data.find(s))
            throw ParseError(lineno + 1, 1, "missing assignment for " + s.to_string());
  }
  return out;
}

std::string print_model(const ModelFile& m) {
  std::ostringstream o;
  o << "[model]\n";
  o << "n = " << m.spec.n << "\n";
  o << "flavor = " << to_string(m.spec.flavor) << "\n";
  o << "d = " << m.spec.d << "\n";
  std::vector<BfBlock> blocks = m.spec.bf_blocks;
  std::sort(blocks.begin(), blocks.end(), [](const BfBlock& a, const BfBlock& b) { return a.p < b.p; });
  for (const auto& b : blocks) o << "block " << b.p << " " << b.rank << "\n";
  if (m.spec.cs_block) {
    o << "cs_rank = " << m.spec.cs_block->rank << "\n";
    o << "metric =";
    for (std::size_t r = 0; r < m.spec.cs_block->k.size(); ++r) {
      if (r) o << " ;";
      for (const auto& x : m.spec.cs_block->k[r]) o << " " << to_string(x);
    }
    o << "\n";
  }
  if (!m.symmetries.empty()) {
    o << "\n[symmetry]\n";
    for (const auto& s : m.symmetries) {
      o << s.family << (s.antisymmetric ? " antisym" : " sym");
      for (int x : s.slots) o << " " << x;
      o << "\n";
    }
  }
  if (m.has_data) {
    o << "\n[data]\n";
    for (const auto& [sym, value] : m.data.values()) o << sym.to_string() << " = " << value.to_string() << "\n";
  }
  return o.str();
}

}  // namespace bvdeform
