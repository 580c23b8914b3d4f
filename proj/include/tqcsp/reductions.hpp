#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "tqcsp/formula.hpp"

namespace tqcsp {

// Propositional 3-CNF; literal +i / -i for variable i in 1..n.
struct Cnf3 {
  int n = 0;
  std::vector<std::array<int, 3>> clauses;

  bool operator==(const Cnf3&) const = default;
};

// DIMACS cnf; clauses shorter than three literals are padded by repeating
// their last literal. Throws ParseError on a malformed header, a clause
// without trailing 0, an empty or over-long clause, or an out-of-range literal.
Cnf3 parse_dimacs(std::string_view text);
std::string to_dimacs(const Cnf3& c);

// Truth-table satisfiability (n <= 24).
bool satisfiable(const Cnf3& c);

// Sentence that is true iff c is unsatisfiable. Prefix
// E t, E f, A y1_0, A y1_1, .., A yn_1, E c1..c{n-1}, E d1..d{m-1}, E u, E v;
// requires n, m >= 1.
QcspInstance reduce_3cnf_complement(const Cnf3& c);

}  // namespace tqcsp
