#include "tqcsp/formula.hpp"

#include <algorithm>

#include "tqcsp/catalogue.hpp"
#include "tqcsp/errors.hpp"

namespace tqcsp {

const char* to_string(Rel op) {
  switch (op) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

bool holds(Rel op, int a, int b) {
  switch (op) {
    case Rel::Eq: return a == b;
    case Rel::Ne: return a != b;
    case Rel::Le: return a <= b;
    case Rel::Lt: return a < b;
    case Rel::Ge: return a >= b;
    case Rel::Gt: return a > b;
  }
  return false;
}

Atom mirrored(const Atom& a) {
  Rel op = a.op;
  switch (a.op) {
    case Rel::Le: op = Rel::Ge; break;
    case Rel::Ge: op = Rel::Le; break;
    case Rel::Lt: op = Rel::Gt; break;
    case Rel::Gt: op = Rel::Lt; break;
    default: break;
  }
  return Atom{a.rhs, op, a.lhs};
}

Atom negated(const Atom& a) {
  switch (a.op) {
    case Rel::Eq: throw Error("negation of an equality is not an atom");
    case Rel::Ne: return Atom{a.lhs, Rel::Eq, a.rhs};
    case Rel::Le: return Atom{a.lhs, Rel::Gt, a.rhs};
    case Rel::Lt: return Atom{a.lhs, Rel::Ge, a.rhs};
    case Rel::Ge: return Atom{a.lhs, Rel::Lt, a.rhs};
    case Rel::Gt: return Atom{a.lhs, Rel::Le, a.rhs};
  }
  return a;
}

Atom reversed(const Atom& a) {
  Atom m = mirrored(a);
  return Atom{a.lhs, m.op, a.rhs};
}

QfFormula reversed(const QfFormula& f) {
  QfFormula out{f.arity, {}};
  for (const Clause& c : f.clauses) {
    Clause d;
    for (const Atom& a : c) d.push_back(reversed(a));
    out.clauses.push_back(std::move(d));
  }
  return out;
}

int max_variable(const Clause& c) {
  int m = -1;
  for (const Atom& a : c) m = std::max({m, a.lhs, a.rhs});
  return m;
}

std::optional<int> QcspInstance::find(const std::string& name) const {
  for (int i = 0; i < num_vars(); ++i)
    if (prefix[i].name == name) return i;
  return std::nullopt;
}

std::vector<Clause> expand(const Constraint& c) {
  // Start from the empty disjunction and distribute each disjunct's CNF over it.
  std::vector<Clause> acc{Clause{}};
  for (const Disjunct& d : c.disjuncts) {
    std::vector<Clause> part;
    if (const auto* a = std::get_if<Atom>(&d)) {
      part.push_back({*a});
    } else {
      const auto& use = std::get<RelationUse>(d);
      part = instantiate(catalogue(use.name), use.args);
    }
    std::vector<Clause> next;
    next.reserve(acc.size() * part.size());
    for (const Clause& lhs : acc)
      for (const Clause& rhs : part) {
        Clause joined = lhs;
        for (const Atom& a : rhs)
          if (std::find(joined.begin(), joined.end(), a) == joined.end()) joined.push_back(a);
        next.push_back(std::move(joined));
      }
    acc = std::move(next);
  }
  return acc;
}

QfFormula QcspInstance::cnf() const {
  QfFormula f{num_vars(), {}};
  for (const Constraint& c : matrix)
    for (Clause& cl : expand(c)) f.clauses.push_back(std::move(cl));
  return f;
}

OhClause make_oh_clause(int pivot, std::vector<int> partners, std::optional<int> target) {
  std::sort(partners.begin(), partners.end());
  partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
  std::erase(partners, pivot);
  return OhClause{pivot, std::move(partners), target};
}

Clause OhClause::to_clause() const {
  Clause c;
  for (int p : partners) c.push_back(Atom{pivot, Rel::Ne, p});
  if (target) c.push_back(Atom{pivot, Rel::Ge, *target});
  return c;
}

QcspInstance OhInstance::to_general() const {
  QcspInstance out{prefix, {}};
  for (const OhClause& c : clauses) {
    Constraint con;
    for (const Atom& a : c.to_clause()) con.disjuncts.push_back(a);
    out.matrix.push_back(std::move(con));
  }
  return out;
}

std::vector<std::string> names_of(const Prefix& prefix) {
  std::vector<std::string> names;
  names.reserve(prefix.size());
  for (const Variable& v : prefix) names.push_back(v.name);
  return names;
}

std::string format_atom(const Atom& a, const std::vector<std::string>& names) {
  auto name = [&](int v) -> std::string {
    if (v == kZero) return "0";
    if (v >= 0 && v < static_cast<int>(names.size())) return names[v];
    return "x" + std::to_string(v + 1);
  };
  return name(a.lhs) + " " + to_string(a.op) + " " + name(a.rhs);
}

std::string format_clause(const Clause& c, const std::vector<std::string>& names) {
  if (c.empty()) return "_|_";
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += " | ";
    s += format_atom(c[i], names);
  }
  return s;
}

std::string format_clause(const OhClause& c, const Prefix& prefix) {
  return format_clause(c.to_clause(), names_of(prefix));
}

QcspInstance reversed(const QcspInstance& inst) {
  QcspInstance out{inst.prefix, {}};
  for (const Constraint& c : inst.matrix) {
    bool plain = std::all_of(c.disjuncts.begin(), c.disjuncts.end(),
                             [](const Disjunct& d) { return std::holds_alternative<Atom>(d); });
    if (plain) {
      Constraint r;
      for (const Disjunct& d : c.disjuncts) r.disjuncts.push_back(reversed(std::get<Atom>(d)));
      out.matrix.push_back(std::move(r));
      continue;
    }
    for (const Clause& cl : expand(c)) {
      Constraint r;
      for (const Atom& a : cl) r.disjuncts.push_back(reversed(a));
      out.matrix.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace tqcsp
