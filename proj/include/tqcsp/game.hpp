#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "tqcsp/formula.hpp"
#include "tqcsp/order.hpp"

namespace tqcsp {

struct GameLimits {
  int max_vars = 12;
  std::uint64_t max_nodes = 100'000'000;
};

struct GameVerdict {
  bool value = false;
  std::uint64_t nodes = 0;
  std::uint64_t memo_entries = 0;
};

// Minimax over order types for the formula's variables 0..arity-1, quantified
// by `quants` from position `initial.size()` on; earlier positions are fixed
// by `initial`. Positions only ever compare with variables still occurring
// in an unresolved clause, so states are memoized on that projection.
class GameSolver {
 public:
  GameSolver(QfFormula f, std::vector<Quantifier> quants, GameLimits limits = {});

  // Throws ResourceLimit when more than max_nodes states are expanded.
  GameVerdict evaluate(const WeakOrder& initial = {});

  // Winning choices of the existential player as nested JSON; null when the
  // evaluated position is false. Call after evaluate() on the same position.
  nlohmann::json strategy(const WeakOrder& initial = {});

 private:
  struct State {
    int next = 0;
    std::vector<int> level;  // per variable; -1 if unassigned or no longer relevant
    std::vector<char> resolved;
  };
  enum class Status { Open, True, False };

  Status settle(State& s) const;
  bool value(const State& s);
  State start(const WeakOrder& initial) const;
  std::vector<Move> moves_at(const State& s) const;
  State child(const State& s, const Move& m) const;
  std::string key(const State& s) const;
  nlohmann::json tree(const State& s, std::uint64_t& budget);

  QfFormula f_;
  std::vector<Quantifier> quants_;
  GameLimits limits_;
  std::vector<int> last_var_;  // per clause
  std::vector<std::vector<int>> clauses_of_;
  std::unordered_map<std::string, bool> memo_;
  std::uint64_t nodes_ = 0;
};

GameVerdict brute_solve(const QcspInstance& inst, const GameLimits& limits = {});

// Quantifiers of the prefix as a vector.
std::vector<Quantifier> quantifiers(const Prefix& prefix);

// Plays the given existential strategy against every universal move.
struct PlayResult {
  bool win = true;
  std::vector<Move> trace;       // moves of the losing play, in prefix order
  std::optional<int> violated;   // clause index into inst.cnf()
  WeakOrder final_order;         // order reached by the losing play
  std::uint64_t plays = 0;       // leaves explored
};

using EpCallback = std::function<Move(const WeakOrder& partial, int x)>;

PlayResult play_against(const QcspInstance& inst, const EpCallback& ep);

}  // namespace tqcsp
