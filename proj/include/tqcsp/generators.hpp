#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "tqcsp/formula.hpp"
#include "tqcsp/oh_sat.hpp"
#include "tqcsp/reductions.hpp"

namespace tqcsp {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240917;

// E c0, A y1_0, A y1_1, E c1, .., E cn with, per level i,
// M+(c{i-1}, yi_0, ci), M+(c{i-1}, yi_1, ci) and M+(ci, ci, c{i-1}).
OhInstance chain_instance(int n);

// Pure M+ instance: random prefix and `num_clauses` clauses M+(x, y, z)
// with independently uniform x, y, z (y = x gives the unit x >= z).
OhInstance random_mplus(Rng& rng, int num_vars, int num_clauses);

// Every pure M+ instance with 1..max_vars variables, every prefix, and a set
// of 0..max_clauses distinct clauses; stops when fn returns false.
void for_each_small_mplus(int max_vars, int max_clauses,
                          const std::function<bool(const OhInstance&)>& fn);

// Random OH clauses (up to max_partners partners, target with probability
// 3/4) plus a few random order atoms.
OhConjunction random_oh_conjunction(Rng& rng, int num_vars, int num_clauses, int max_partners,
                                    int num_atoms);

Cnf3 random_cnf3(Rng& rng, int n, int m);

}  // namespace tqcsp
