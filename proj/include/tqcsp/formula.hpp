#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tqcsp {

enum class Rel { Eq, Ne, Le, Lt, Ge, Gt };

// Distinguished pseudo-variable standing for the rational 0. Only used by
// classifier-internal formulas, never inside QCSP instances.
inline constexpr int kZero = -1;

struct Atom {
  int lhs = 0;
  Rel op = Rel::Eq;
  int rhs = 0;

  auto operator<=>(const Atom&) const = default;
};

const char* to_string(Rel op);

// Truth of `a op b` for integer-coded values.
bool holds(Rel op, int a, int b);

// The atom with sides swapped and the relation mirrored (x<y becomes y>x).
Atom mirrored(const Atom& a);
// Logical negation as a single atom (the negation of = is not an atom: throws).
Atom negated(const Atom& a);
// Order reversal: x<y becomes x>y, x<=y becomes x>=y; = and != are unchanged.
Atom reversed(const Atom& a);

// Disjunction of atoms.
using Clause = std::vector<Atom>;

// Conjunction of clauses over variables 0..arity-1.
struct QfFormula {
  int arity = 0;
  std::vector<Clause> clauses;

  bool operator==(const QfFormula&) const = default;
};

QfFormula reversed(const QfFormula& f);

// Highest variable index referenced by the clause, or -1.
int max_variable(const Clause& c);

enum class Quantifier { Exists, Forall };

struct Variable {
  std::string name;
  Quantifier quantifier = Quantifier::Exists;

  bool operator==(const Variable&) const = default;
};

using Prefix = std::vector<Variable>;

// Named relation applied to instance variables, e.g. `M+ x y z`.
struct RelationUse {
  std::string name;
  std::vector<int> args;

  bool operator==(const RelationUse&) const = default;
};

using Disjunct = std::variant<Atom, RelationUse>;

// One constraint line: a disjunction whose disjuncts are atoms or relation uses.
struct Constraint {
  std::vector<Disjunct> disjuncts;

  bool operator==(const Constraint&) const = default;
};

// General-dialect QCSP sentence: quantifier prefix plus constraint matrix.
struct QcspInstance {
  Prefix prefix;
  std::vector<Constraint> matrix;

  bool operator==(const QcspInstance&) const = default;

  int num_vars() const { return static_cast<int>(prefix.size()); }
  bool is_universal(int v) const { return prefix[v].quantifier == Quantifier::Forall; }
  std::optional<int> find(const std::string& name) const;

  // Matrix expanded to CNF over the prefix variables.
  QfFormula cnf() const;
};

// CNF of one constraint line (relation uses expanded, disjunction distributed).
std::vector<Clause> expand(const Constraint& c);

// x != y1 | ... | x != yk | x >= z, with the >=-disjunct optional. An empty
// partner set with a target is a unit order atom; with no target it is false.
struct OhClause {
  int pivot = 0;
  std::vector<int> partners;  // sorted, unique, never contains pivot
  std::optional<int> target;

  auto operator<=>(const OhClause&) const = default;

  bool is_unit() const { return partners.empty() && target.has_value(); }
  bool is_bottom() const { return partners.empty() && !target.has_value(); }
  Clause to_clause() const;
};

// Builds an OhClause with partners sorted, deduplicated and the pivot removed.
OhClause make_oh_clause(int pivot, std::vector<int> partners, std::optional<int> target);

// Solver-dialect instance: the matrix is a list of OH clauses.
struct OhInstance {
  Prefix prefix;
  std::vector<OhClause> clauses;

  bool operator==(const OhInstance&) const = default;

  int num_vars() const { return static_cast<int>(prefix.size()); }
  bool is_universal(int v) const { return prefix[v].quantifier == Quantifier::Forall; }

  QcspInstance to_general() const;
};

// "x1 != x2 | x1 >= x3" using prefix names ("_|_" for the empty clause).
std::string format_clause(const OhClause& c, const Prefix& prefix);
std::string format_clause(const Clause& c, const std::vector<std::string>& names);
std::string format_atom(const Atom& a, const std::vector<std::string>& names);

std::vector<std::string> names_of(const Prefix& prefix);

// Reverses every order atom of the matrix (the dual instance).
QcspInstance reversed(const QcspInstance& inst);

}  // namespace tqcsp
