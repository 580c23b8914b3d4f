#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tqcsp/catalogue.hpp"
#include "tqcsp/formula.hpp"
#include "tqcsp/order.hpp"

namespace tqcsp {

inline constexpr int kMaxClassifyArity = 6;

struct Preservation {
  bool preserved = true;
  // First violating pair: t1 (zero-marked) and t2 satisfy the relation,
  // op(t1, t2) does not.
  std::optional<std::pair<WeakOrder, WeakOrder>> witness;

  explicit operator bool() const { return preserved; }
};

// Throws ArityError above kMaxClassifyArity.
Preservation is_preserved_by(const TemporalRelation& r, SymbolicOp op);

// Preserved by ll and dual ll.
bool is_oh(const TemporalRelation& r);

// Every clause, rewritten over {!=, >=}, has at most one >= literal.
bool oh_syntactic(const QfFormula& f);

// Every clause, rewritten over {!=, >=}, is (x!=y1 | .. | x!=yk | x>=z1 | .. | x>=zl)
// for a single x.
bool ppsynt_shape(const QfFormula& f);

// Sound recognizer for the guarded Ord-Horn grammar on the given clauses.
bool goh_syntactic(const QfFormula& f);

// Replaces every group of two or more >= disjuncts sharing a pivot by a
// single one, choosing the first index that keeps the relation. Throws
// NoValidIndex when no index works, HypothesisViolation on non-OH input.
QfFormula elim_min(const QfFormula& f);

// (x != y1 | .. | x != yk | x >= z) over x, y1..yk, z.
QfFormula mu(int k);

// Variables 0..num_free-1 are free, the rest existentially quantified.
struct PpDefinition {
  QfFormula matrix;
  int num_free = 0;
};

// Recursive pp-definition of mu(k) from M+ (k <= 5).
PpDefinition pp_def_mplus(int k);

// Whether the projection of d onto its free variables equals g.
bool defines(const PpDefinition& d, const QfFormula& g, WeakOrder* witness = nullptr);

// lower <= r <= upper as sets of order types. Throws ArityError on
// mismatched arities.
bool verify_sandwich(const TemporalRelation& r, const TemporalRelation& lower,
                     const TemporalRelation& upper, WeakOrder* witness = nullptr);

enum class GadgetKind {
  LeFromMplus,       // item 1: <= via M+(y,y,x)
  NeFromMplus,       // item 1: != via forall z M+(x,y,z)
  LtFromMplus,       // item 1: < via forall z M+(y,y,x) & M+(x,y,z)
  StrictFromM,       // item 2: R & != for a dual or separated M-relation R
  DisFromSepStrict,  // item 3
  DisFromDualStrict, // item 4
  ZFromSepDis,       // item 5
};

// Variables 0..num_free-1 are free; the rest are bound by `bound` in order.
struct Gadget {
  GadgetKind kind{};
  QfFormula matrix;
  int num_free = 0;
  std::vector<Quantifier> bound;
  std::vector<std::string> names;
  // Intended relation on the free variables, as bounds (equal for items 1, 5).
  QfFormula lower;
  QfFormula upper;
};

// Builds the gadget after checking its hypotheses on `inputs` (item 2: R;
// item 3: a separated strict M-relation; item 4: a dual strict M-relation;
// item 5: a separated disjunction of disequalities). Throws
// HypothesisViolation.
Gadget short_tool_gadget(GadgetKind kind, const std::vector<TemporalRelation>& inputs = {});

// Order types of the free variables satisfying the gadget, in enumeration
// order; quantified blocks are evaluated by the game solver.
std::vector<WeakOrder> gadget_relation(const Gadget& g);

// lower <= gadget_relation(g) <= upper; `witness` gets the first offending type.
bool check_gadget(const Gadget& g, WeakOrder* witness = nullptr);

struct ClassWitness {
  std::string relation;
  SymbolicOp op{};
  WeakOrder t1;
  WeakOrder t2;
};

struct ClassReport {
  bool oh_semantic = true;
  bool oh_syntactic = true;
  bool pp_preserved = true;
  bool dual_pp_preserved = true;
  bool ppsynt_shape = true;
  bool goh_syntactic = true;
  std::vector<ClassWitness> witnesses;
  // "P", "coNP-hard-unless-GOH-definable", or "outside-OH" when some
  // relation is not OH and no tractable case applies.
  std::string verdict;
  std::string via;  // "pp", "dual-pp", "GOH-parse" for P
};

ClassReport classify(const std::vector<TemporalRelation>& rels);

}  // namespace tqcsp
