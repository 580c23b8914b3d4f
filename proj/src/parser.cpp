#include "tqcsp/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "tqcsp/errors.hpp"

namespace tqcsp {
namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == '|') {
      out.push_back({"|", static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != '|' && line[j] != '#' &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    out.push_back({std::string(line.substr(i, j - i)), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

std::optional<Rel> parse_op(const std::string& s) {
  if (s == "=") return Rel::Eq;
  if (s == "!=") return Rel::Ne;
  if (s == "<") return Rel::Lt;
  if (s == "<=") return Rel::Le;
  if (s == ">") return Rel::Gt;
  if (s == ">=") return Rel::Ge;
  return std::nullopt;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'')) return false;
  return true;
}

using Lookup = std::unordered_map<std::string, int>;

int resolve(const Lookup& vars, const Token& t, int line) {
  auto it = vars.find(t.text);
  if (it == vars.end()) throw ParseError(line, t.column, "undeclared variable '" + t.text + "'");
  return it->second;
}

// Parses the body of a C line (tokens after "C").
Constraint parse_constraint(const std::vector<Token>& toks, std::size_t pos, const Lookup& vars,
                            int line) {
  Constraint c;
  while (pos < toks.size()) {
    const Token& head = toks[pos];
    if (head.text == "|") throw ParseError(line, head.column, "empty disjunct");
    bool atom_next = pos + 1 < toks.size() && parse_op(toks[pos + 1].text).has_value();
    if (atom_next || (vars.count(head.text) && !find_relation(head.text))) {
      if (pos + 1 >= toks.size())
        throw ParseError(line, head.column + static_cast<int>(head.text.size()),
                         "expected operator after '" + head.text + "'");
      const Token& op_tok = toks[pos + 1];
      auto op = parse_op(op_tok.text);
      if (!op) throw ParseError(line, op_tok.column, "unknown operator '" + op_tok.text + "'");
      if (pos + 2 >= toks.size() || toks[pos + 2].text == "|")
        throw ParseError(line, op_tok.column, "missing right operand");
      int lhs = resolve(vars, head, line);
      int rhs = resolve(vars, toks[pos + 2], line);
      c.disjuncts.push_back(Atom{lhs, *op, rhs});
      pos += 3;
    } else {
      auto rel = find_relation(head.text);
      if (!rel) throw ParseError(line, head.column, "unknown relation '" + head.text + "'");
      RelationUse use{head.text, {}};
      ++pos;
      while (pos < toks.size() && toks[pos].text != "|") use.args.push_back(resolve(vars, toks[pos++], line));
      if (static_cast<int>(use.args.size()) != rel->arity)
        throw ParseError(line, head.column,
                         "relation " + head.text + " expects " + std::to_string(rel->arity) +
                             " arguments, got " + std::to_string(use.args.size()));
      c.disjuncts.push_back(std::move(use));
    }
    if (pos < toks.size()) {
      if (toks[pos].text != "|")
        throw ParseError(line, toks[pos].column, "expected '|' before '" + toks[pos].text + "'");
      ++pos;
      if (pos == toks.size()) throw ParseError(line, toks[pos - 1].column, "dangling '|'");
    }
  }
  return c;
}

void expect_header(const std::vector<Token>& toks, int line, const char* kind) {
  if (toks.size() != 2 || toks[0].text != kind || toks[1].text != "v1")
    throw ParseError(line, toks.empty() ? 1 : toks[0].column,
                     std::string("expected header '") + kind + " v1'");
}

std::string print_disjunct(const Disjunct& d, const std::vector<std::string>& names) {
  if (const auto* a = std::get_if<Atom>(&d)) return format_atom(*a, names);
  const auto& use = std::get<RelationUse>(d);
  std::string s = use.name;
  for (int v : use.args) s += " " + names[v];
  return s;
}

std::string print_constraint(const Constraint& c, const std::vector<std::string>& names) {
  std::string s = "C";
  for (std::size_t i = 0; i < c.disjuncts.size(); ++i) {
    s += i ? " | " : " ";
    s += print_disjunct(c.disjuncts[i], names);
  }
  return s;
}

}  // namespace

QcspInstance parse_instance(std::string_view text) {
  QcspInstance inst;
  Lookup vars;
  bool header = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    if (!header) {
      expect_header(toks, line, "qcsp");
      header = true;
      continue;
    }
    const std::string& kw = toks[0].text;
    if (kw == "E" || kw == "A") {
      if (toks.size() != 2)
        throw ParseError(line, toks[0].column, "expected exactly one variable name");
      const Token& name = toks[1];
      if (!is_identifier(name.text) || parse_op(name.text))
        throw ParseError(line, name.column, "invalid variable name '" + name.text + "'");
      if (vars.count(name.text))
        throw ParseError(line, name.column, "duplicate variable '" + name.text + "'");
      vars.emplace(name.text, inst.num_vars());
      inst.prefix.push_back(
          Variable{name.text, kw == "E" ? Quantifier::Exists : Quantifier::Forall});
    } else if (kw == "C") {
      inst.matrix.push_back(parse_constraint(toks, 1, vars, line));
    } else {
      throw ParseError(line, toks[0].column, "unknown keyword '" + kw + "'");
    }
  }
  if (!header) throw ParseError(line + 1, 1, "missing header 'qcsp v1'");
  return inst;
}

std::string print_instance(const QcspInstance& inst) {
  std::string out = "qcsp v1\n";
  for (const Variable& v : inst.prefix)
    out += (v.quantifier == Quantifier::Exists ? "E " : "A ") + v.name + "\n";
  auto names = names_of(inst.prefix);
  for (const Constraint& c : inst.matrix) out += print_constraint(c, names) + "\n";
  return out;
}

std::string print_instance(const OhInstance& inst) { return print_instance(inst.to_general()); }

TemporalRelation parse_relation(std::string_view text) {
  TemporalRelation r;
  Lookup vars;
  bool header = false;
  bool have_arity = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    if (!header) {
      expect_header(toks, line, "rel");
      header = true;
      continue;
    }
    const std::string& kw = toks[0].text;
    if (kw == "arity") {
      if (have_arity) throw ParseError(line, toks[0].column, "arity declared twice");
      if (toks.size() != 2) throw ParseError(line, toks[0].column, "expected 'arity <n>'");
      try {
        r.arity = std::stoi(toks[1].text);
      } catch (const std::exception&) {
        throw ParseError(line, toks[1].column, "arity must be a number");
      }
      if (r.arity < 1 || r.arity > 64) throw ParseError(line, toks[1].column, "arity out of range");
      for (int i = 0; i < r.arity; ++i) vars.emplace("x" + std::to_string(i + 1), i);
      r.defn.arity = r.arity;
      have_arity = true;
    } else if (kw == "name") {
      if (toks.size() != 2) throw ParseError(line, toks[0].column, "expected 'name <id>'");
      r.name = toks[1].text;
    } else if (kw == "C") {
      if (!have_arity) throw ParseError(line, toks[0].column, "clause before arity line");
      for (Clause& c : expand(parse_constraint(toks, 1, vars, line)))
        r.defn.clauses.push_back(std::move(c));
    } else {
      throw ParseError(line, toks[0].column, "unknown keyword '" + kw + "'");
    }
  }
  if (!header) throw ParseError(line + 1, 1, "missing header 'rel v1'");
  if (!have_arity) throw ParseError(line + 1, 1, "missing arity line");
  if (r.name.empty()) r.name = "R";
  return r;
}

std::string print_relation(const TemporalRelation& r) {
  std::string out = "rel v1\narity " + std::to_string(r.arity) + "\nname " + r.name + "\n";
  std::vector<std::string> names;
  for (int i = 0; i < r.arity; ++i) names.push_back("x" + std::to_string(i + 1));
  for (const Clause& c : r.defn.clauses) {
    Constraint con;
    for (const Atom& a : c) con.disjuncts.push_back(a);
    out += print_constraint(con, names) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tqcsp
