#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tqcsp/formula.hpp"

namespace tqcsp {

// A temporal relation given by a quantifier-free CNF definition over x1..xn.
struct TemporalRelation {
  std::string name;
  int arity = 0;
  QfFormula defn;
};

// Named relations of the catalogue: D, SD, Dis (alias NEQ2), GSN, M+, M-,
// M<+, M<-, GM+, GM-, GVM<+, GVM<-, SM, SM< (alias SSM), lrGSM, rlGSM,
// lrGSM<, rlGSM<, Z, and NAE<k> for k >= 2. Throws Error on unknown names.
TemporalRelation catalogue(std::string_view name);

std::optional<TemporalRelation> find_relation(std::string_view name);

// Names accepted by catalogue(), NAE listed as "NAE3".
std::vector<std::string> catalogue_names();

// Substitutes args for x1..xn in the relation's definition.
std::vector<Clause> instantiate(const TemporalRelation& r, const std::vector<int>& args);

// The relation with every order atom reversed.
TemporalRelation reversed(const TemporalRelation& r);

}  // namespace tqcsp
