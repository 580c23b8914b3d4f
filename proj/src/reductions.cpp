#include "tqcsp/reductions.hpp"

#include <cstdlib>
#include <sstream>

#include "tqcsp/errors.hpp"

namespace tqcsp {

Cnf3 parse_dimacs(std::string_view text) {
  Cnf3 out;
  bool header = false;
  int expected = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%') continue;
    if (tok == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> out.n >> expected) || fmt != "cnf" || out.n < 0 || expected < 0)
        throw ParseError(lineno, 1, "malformed DIMACS header");
      if (ls >> tok) throw ParseError(lineno, 1, "malformed DIMACS header");
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, 1, "clause before the DIMACS header");
    std::vector<int> lits;
    bool closed = false;
    do {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0' || closed) throw ParseError(lineno, 1, "unexpected token '" + tok + "'");
      if (v == 0) {
        closed = true;
        continue;
      }
      if (std::labs(v) > out.n)
        throw ParseError(lineno, 1, "literal " + tok + " out of range");
      lits.push_back(static_cast<int>(v));
    } while (ls >> tok);
    if (!closed) throw ParseError(lineno, 1, "clause without trailing 0");
    if (lits.empty()) throw ParseError(lineno, 1, "zero-length clause");
    if (lits.size() > 3) throw ParseError(lineno, 1, "clause with more than three literals");
    while (lits.size() < 3) lits.push_back(lits.back());
    out.clauses.push_back({lits[0], lits[1], lits[2]});
  }
  if (!header) throw ParseError(lineno + 1, 1, "missing DIMACS header");
  if (static_cast<int>(out.clauses.size()) != expected)
    throw ParseError(lineno + 1, 1, "header announces " + std::to_string(expected) +
                                        " clauses, found " + std::to_string(out.clauses.size()));
  return out;
}

std::string to_dimacs(const Cnf3& c) {
  std::ostringstream os;
  os << "p cnf " << c.n << ' ' << c.clauses.size() << '\n';
  for (const auto& cl : c.clauses) os << cl[0] << ' ' << cl[1] << ' ' << cl[2] << " 0\n";
  return os.str();
}

bool satisfiable(const Cnf3& c) {
  if (c.n > 24) throw ResourceLimit("satisfiable: more than 24 variables");
  for (std::uint32_t a = 0; a < (1u << c.n); ++a) {
    bool all = true;
    for (const auto& cl : c.clauses) {
      bool any = false;
      for (int l : cl) any = any || (((a >> (std::abs(l) - 1)) & 1) == (l > 0 ? 1u : 0u));
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

QcspInstance reduce_3cnf_complement(const Cnf3& c) {
  const int n = c.n, m = static_cast<int>(c.clauses.size());
  if (n < 1 || m < 1) throw Error("reduce_3cnf_complement: needs at least one variable and clause");
  QcspInstance out;
  auto add = [&](std::string name, Quantifier q) {
    out.prefix.push_back({std::move(name), q});
    return out.num_vars() - 1;
  };
  const int t = add("t", Quantifier::Exists);
  const int f = add("f", Quantifier::Exists);
  std::vector<std::array<int, 2>> y(n + 1);
  for (int i = 1; i <= n; ++i)
    for (int b = 0; b < 2; ++b)
      y[i][b] = add("y" + std::to_string(i) + "_" + std::to_string(b), Quantifier::Forall);
  std::vector<int> lower(n + 1), upper(m + 1);
  lower[0] = f;
  upper[0] = t;
  for (int i = 1; i < n; ++i) lower[i] = add("c" + std::to_string(i), Quantifier::Exists);
  for (int j = 1; j < m; ++j) upper[j] = add("d" + std::to_string(j), Quantifier::Exists);
  const int u = add("u", Quantifier::Exists);
  const int v = add("v", Quantifier::Exists);
  lower[n] = v;
  upper[m] = u;

  auto mplus = [&](int a, int b, int d) {
    out.matrix.push_back(Constraint{{RelationUse{"M+", {a, b, d}}}});
  };
  for (int i = 1; i <= n; ++i) {
    mplus(lower[i - 1], y[i][0], lower[i]);
    mplus(lower[i - 1], y[i][1], lower[i]);
    mplus(lower[i], lower[i], lower[i - 1]);
  }
  for (int j = 1; j <= m; ++j) {
    for (int l : c.clauses[j - 1]) mplus(upper[j - 1], y[std::abs(l)][l > 0 ? 1 : 0], upper[j]);
    mplus(upper[j], upper[j], upper[j - 1]);
  }
  out.matrix.push_back(Constraint{{RelationUse{"Z", {v, f, u, t}}}});
  return out;
}

}  // namespace tqcsp
