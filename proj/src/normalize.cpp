#include "tqcsp/normalize.hpp"

#include <algorithm>
#include <set>

#include "tqcsp/errors.hpp"

namespace tqcsp {
namespace {

// Each atom as a conjunction of {>=, !=} literals, written as atoms.
std::vector<Atom> literals_of(const Atom& a) {
  switch (a.op) {
    case Rel::Eq: return {{a.lhs, Rel::Ge, a.rhs}, {a.rhs, Rel::Ge, a.lhs}};
    case Rel::Ne: return {{a.lhs, Rel::Ne, a.rhs}};
    case Rel::Le: return {{a.rhs, Rel::Ge, a.lhs}};
    case Rel::Lt: return {{a.rhs, Rel::Ge, a.lhs}, {a.rhs, Rel::Ne, a.lhs}};
    case Rel::Ge: return {{a.lhs, Rel::Ge, a.rhs}};
    case Rel::Gt: return {{a.lhs, Rel::Ge, a.rhs}, {a.lhs, Rel::Ne, a.rhs}};
  }
  return {};
}

OhClause pivot_clause(const Clause& lits) {
  std::vector<Atom> ge, ne;
  for (const Atom& a : lits) {
    if (a.lhs == kZero || a.rhs == kZero) throw DialectError("zero marker inside a QCSP clause");
    if (a.op == Rel::Ge) {
      if (std::find(ge.begin(), ge.end(), a) == ge.end()) ge.push_back(a);
    } else if (a.lhs != a.rhs) {
      ne.push_back(a);
    }
  }
  if (ge.size() > 1) throw NotPivoted("clause has more than one >=-disjunct");
  if (ge.empty() && ne.empty()) return OhClause{0, {}, std::nullopt};

  std::vector<int> candidates;
  if (!ge.empty()) {
    candidates.push_back(ge[0].lhs);
  } else {
    candidates = {std::min(ne[0].lhs, ne[0].rhs), std::max(ne[0].lhs, ne[0].rhs)};
  }
  for (int p : candidates) {
    std::vector<int> partners;
    bool ok = true;
    for (const Atom& a : ne) {
      if (a.lhs == p) {
        partners.push_back(a.rhs);
      } else if (a.rhs == p) {
        partners.push_back(a.lhs);
      } else {
        ok = false;
        break;
      }
    }
    if (ok)
      return make_oh_clause(p, std::move(partners),
                            ge.empty() ? std::nullopt : std::optional<int>(ge[0].rhs));
  }
  throw NotPivoted("clause has no common pivot variable");
}

}  // namespace

std::vector<OhClause> to_oh_clauses(const Clause& c) {
  std::vector<Clause> acc{Clause{}};
  for (const Atom& a : c) {
    std::vector<Atom> lits = literals_of(a);
    std::vector<Clause> next;
    for (const Clause& base : acc)
      for (const Atom& l : lits) {
        Clause d = base;
        d.push_back(l);
        next.push_back(std::move(d));
      }
    acc = std::move(next);
  }
  std::vector<OhClause> out;
  for (const Clause& lits : acc)
    out.push_back(pivot_clause(lits));
  return out;
}

OhInstance normalize(const QcspInstance& inst) {
  OhInstance out{inst.prefix, {}};
  std::set<OhClause> seen;
  for (const Clause& c : inst.cnf().clauses)
    for (OhClause& oc : to_oh_clauses(c))
      if (seen.insert(oc).second) out.clauses.push_back(std::move(oc));
  return out;
}

OhInstance normalize(const OhInstance& inst) { return normalize(inst.to_general()); }

}  // namespace tqcsp
