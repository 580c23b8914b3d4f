#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tqcsp/formula.hpp"
#include "tqcsp/order.hpp"
#include "tqcsp/solver.hpp"

namespace tqcsp {

using VarSet = boost::dynamic_bitset<>;

enum class Rule { Init, Trans, AltTrans, Progress };

const char* to_string(Rule r);

// P(x, z; A), stored with A already reduced by cut(x, z).
struct Fact {
  int x = 0;
  int z = 0;
  VarSet A;
  Rule rule = Rule::Init;
  std::vector<int> premises;
  bool alive = true;  // false once a stored fact with a smaller A appears
};

struct SaturateOptions {
  std::size_t cap = 1'000'000;
  bool stop_at_bottom = true;
  // Keep only subset-minimal A per (x, z). Without pruning every distinct A
  // is kept (used to check that pruning loses nothing).
  bool prune = true;
};

enum class SaturationStatus { Fixpoint, Bottom, CapExceeded };

class FactBase {
 public:
  SaturationStatus status() const { return status_; }
  bool bottom() const { return bottom_fact_.has_value(); }
  // Fact on which Refute fired.
  std::optional<int> bottom_fact() const { return bottom_fact_; }
  const std::vector<Fact>& facts() const { return facts_; }
  std::size_t fact_count() const { return facts_.size(); }
  int num_vars() const { return n_; }

  // Alive facts for (x, z).
  const std::vector<int>& at(int x, int z) const { return table_[x * n_ + z]; }
  bool has_empty(int x, int z) const { return empty_[x * n_ + z]; }
  // Some stored fact for (x, z) has its A contained in `a`.
  bool derives(int x, int z, const VarSet& a) const;
  std::vector<VarSet> minimal_sets(int x, int z) const;

  // Facts used to derive the bottom fact, premises before conclusions.
  std::vector<int> bottom_chain() const;

  std::string format_fact(int id, const Prefix& prefix) const;
  // "P x z {a,b}" lines for alive facts, sorted by (x, z, A) indices.
  std::string dump(const Prefix& prefix) const;

 private:
  friend class Saturator;
  int n_ = 0;
  SaturationStatus status_ = SaturationStatus::Fixpoint;
  std::optional<int> bottom_fact_;
  std::vector<Fact> facts_;
  std::vector<std::vector<int>> table_;
  std::vector<char> empty_;
};

// Least fixpoint of the rules Init, Simplify, Trans, AltTrans, Progress and
// Refute on a pure M+ instance. Throws DialectError on other instances.
FactBase saturate(const OhInstance& inst, const SaturateOptions& opts = {});

// Where the existential player puts variable x (all earlier variables placed
// in `partial`). Throws StrategyUndefined when the two defining conditions
// cannot be met together.
Move ep_move(const OhInstance& inst, const FactBase& facts, const WeakOrder& partial, int x);

// Every stored P(x, z; A) with z not in A has its clause
// ((x = v for v in up(A) minus {x,z} and cut(x,z)) => x >= z) in the
// verdict's clause set. `missing` receives the first uncovered fact.
bool check_cover(const OhInstance& inst, const FactBase& facts, const Verdict& v,
                 int* missing = nullptr);

}  // namespace tqcsp
