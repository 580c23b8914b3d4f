#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqcsp/formula.hpp"
#include "tqcsp/order.hpp"

namespace tqcsp {

// Conjunction of OH clauses and order atoms over variables 0..num_vars-1.
struct OhConjunction {
  int num_vars = 0;
  std::vector<OhClause> clauses;
  std::vector<Atom> atoms;
};

// One closure step: two classes merged (by an = atom or a cycle of <=
// edges), or a clause fired because all its partners joined the pivot's class.
struct OhEvent {
  enum class Kind { MergeEq, MergeCycle, Fire };
  Kind kind;
  int a = -1;
  int b = -1;
  int clause = -1;
};

struct OhResult {
  bool sat = false;
  std::optional<WeakOrder> model;  // all classes on distinct levels
  std::vector<OhEvent> certificate;
  std::string reason;  // why UNSAT, empty when SAT
};

// Clause set indexed once and queried with varying extra atoms. Each query
// runs a fresh closure; the object keeps scratch buffers, so a single
// instance must not be queried concurrently.
class OhOracle {
 public:
  OhOracle(int num_vars, const std::vector<OhClause>& clauses);

  bool satisfiable(const std::vector<Atom>& atoms) const;
  OhResult solve(const std::vector<Atom>& atoms, bool with_certificate = true) const;

  int num_vars() const { return n_; }
  int num_clauses() const { return static_cast<int>(pivot_.size()); }

 private:
  bool closure(const std::vector<Atom>& atoms, std::vector<OhEvent>* log, std::string* reason) const;
  int find(int v) const;
  bool unite(int a, int b) const;

  int n_;
  std::vector<int> pivot_;
  std::vector<int> target_;  // -1 when the clause has no target
  std::vector<int> first_partner_;
  std::vector<int> partners_;

  mutable std::vector<int> parent_;
  mutable std::vector<char> fired_;
  mutable std::vector<std::pair<int, int>> edges_;  // (a, b): a <= b
};

// Decides c; the model (when SAT) satisfies every clause and atom.
OhResult oh_sat(const OhConjunction& c);

// Whether c entails a: c together with the negation of a is unsatisfiable.
bool entails(const OhConjunction& c, const Atom& a);

}  // namespace tqcsp
