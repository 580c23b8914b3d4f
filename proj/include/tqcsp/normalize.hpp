#pragma once

#include <vector>

#include "tqcsp/formula.hpp"

namespace tqcsp {

// Rewrites one general clause over {=,!=,<,<=,>,>=} into OH clauses: a<=b
// becomes b>=a, a>b becomes a>=b and a!=b, a=b becomes both >= directions,
// and x!=x disjuncts are deleted. Throws NotPivoted when a resulting
// clause has no common pivot or more than one >=-disjunct.
std::vector<OhClause> to_oh_clauses(const Clause& c);

// Solver dialect of the instance with duplicate clauses removed (first
// occurrence order kept).
OhInstance normalize(const QcspInstance& inst);
OhInstance normalize(const OhInstance& inst);

}  // namespace tqcsp
