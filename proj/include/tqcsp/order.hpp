#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tqcsp/formula.hpp"

namespace tqcsp {

// An ordered partition of positions 0..n-1 into levels, stored as one dense
// level index per position (0 = lowest). The optional zero marker names the
// level holding the rational 0; that level may contain no position.
struct WeakOrder {
  std::vector<int> level;
  std::optional<int> zero;

  bool operator==(const WeakOrder&) const = default;
  auto operator<=>(const WeakOrder&) const = default;

  int size() const { return static_cast<int>(level.size()); }
  int num_levels() const;
  // Level value of a variable or of kZero.
  int value(int v) const;
  // Positions per level, lowest first.
  std::vector<std::vector<int>> levels() const;
};

// Renumbers levels densely, keeping their relative order.
WeakOrder canonical(WeakOrder w);

// "{x1,x2} < {x3}" style rendering; names default to x1..xn.
std::string to_string(const WeakOrder& w, const std::vector<std::string>& names = {});

// Type of a concrete assignment.
WeakOrder order_type(const std::vector<double>& values);

// Placement of a new position: equal to an existing level, or into gap g
// (below level g, above level g-1; gap num_levels is the top).
struct Move {
  enum class Kind : std::uint8_t { Level, Gap };
  Kind kind = Kind::Gap;
  int index = 0;

  bool operator==(const Move&) const = default;
};

std::string to_string(const Move& m);

// Appends a position placed by m.
void place(WeakOrder& w, const Move& m);

// Levels first, then gaps bottom-up.
std::vector<Move> moves(int num_levels);

bool eval_atom(const Atom& a, const WeakOrder& w);
bool eval_clause(const Clause& c, const WeakOrder& w);
// Throws Error if w does not assign every variable of f.
bool eval_qf(const QfFormula& f, const WeakOrder& w);

// a(n): number of weak orders on n positions.
std::uint64_t fubini(int n);

inline constexpr int kMaxEnumArity = 8;

// Calls fn on each weak order of n positions exactly once; stops early when
// fn returns false. Throws Error for n > kMaxEnumArity.
void for_each_weak_order(int n, const std::function<bool(const WeakOrder&)>& fn);
std::vector<WeakOrder> enumerate_weak_orders(int n);

// Weak orders on n positions together with a zero marker placed anywhere.
void for_each_zero_marked(int n, const std::function<bool(const WeakOrder&)>& fn);

enum class SymbolicOp { pp, dual_pp, ll, dual_ll, lex, dual_lex };

const char* to_string(SymbolicOp op);

// Order type of the coordinatewise image op(t1, t2). Throws Error when op
// needs the zero marker and t1 has none.
WeakOrder apply_op(SymbolicOp op, const WeakOrder& t1, const WeakOrder& t2);

// Mirrors every level (and the zero marker).
WeakOrder reversed(const WeakOrder& w);

// Variables 0..b-1 are fixed by `bound` (b = bound.size()); searches an
// extension to f.arity variables satisfying f.
std::optional<WeakOrder> sat_exists(const QfFormula& f, const WeakOrder& bound);

// Whether the relations defined by f and g (same arity) coincide; on
// difference, `witness` receives the first order type in one but not the other.
bool same_relation(const QfFormula& f, const QfFormula& g, WeakOrder* witness = nullptr);

}  // namespace tqcsp
