#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tqcsp/formula.hpp"

namespace tqcsp {

// Universal variables y with u before or equal to y in prefix order.
std::vector<int> up_set(int u, const OhInstance& inst);
// Universal variables after every existential among {x, z}, except z.
std::vector<int> cut(int x, int z, const OhInstance& inst);

// The clause ((x = v for v in up(u) minus {x,z} and cut(x,z)) => x >= z).
OhClause derived_clause(int x, int z, int u, const OhInstance& inst);

// One unsatisfiable oracle test for the triple (x, z, u). `clause` indexes
// Verdict::clauses; `fresh` is false when the clause was already present.
struct DerivationEvent {
  int x = 0;
  int z = 0;
  int u = 0;
  int clause = -1;
  bool fresh = false;
};

struct SolveOptions {
  // With false, the run continues to the fixpoint after a rejection (used to
  // compare the full clause set against the proof system).
  bool stop_on_reject = true;
  bool record_duplicates = true;
  // Reuse oracle answers that are implied by earlier answers: unsatisfiable
  // tests stay unsatisfiable as clauses are added, satisfiable ones stay
  // satisfiable for smaller equality sets while the clause set is unchanged.
  bool reuse_answers = true;
};

struct Verdict {
  bool value = true;
  Prefix prefix;
  std::vector<OhClause> clauses;  // matrix first, then derived clauses in order
  int num_matrix = 0;
  std::vector<DerivationEvent> log;
  std::optional<int> rejecting_clause;  // index into clauses
  std::uint64_t oracle_calls = 0;
  int passes = 0;

  int num_derived() const { return static_cast<int>(clauses.size()) - num_matrix; }
  bool contains(const OhClause& c) const;
};

// Decides an instance whose matrix clauses have at most one partner and a
// target (pure M+ triples and units). Throws DialectError otherwise.
Verdict solve(const OhInstance& inst, const SolveOptions& opts = {});

// Re-runs every fresh derivation's oracle test in log order and checks the
// rejection condition; true when the certificate reproduces.
bool replay_certificate(const OhInstance& inst, const Verdict& v);

// Rewrites every clause into M+ triples and units: clauses with k >= 2
// partners through a chain of fresh existential variables, targetless
// clauses against a fresh universal variable appended after the prefix.
OhInstance compile_to_mplus(const OhInstance& inst);

bool is_pure_mplus(const OhInstance& inst);

// Normalizes, compiles when needed, and solves.
Verdict solve_general(const QcspInstance& inst, const SolveOptions& opts = {});

}  // namespace tqcsp
