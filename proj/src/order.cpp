#include "tqcsp/order.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "tqcsp/errors.hpp"

namespace tqcsp {

int WeakOrder::num_levels() const {
  int m = zero ? *zero : -1;
  for (int l : level) m = std::max(m, l);
  return m + 1;
}

int WeakOrder::value(int v) const {
  if (v == kZero) {
    if (!zero) throw Error("atom mentions 0 but the order has no zero marker");
    return *zero;
  }
  if (v < 0 || v >= size()) throw Error("variable x" + std::to_string(v + 1) + " is unassigned");
  return level[v];
}

std::vector<std::vector<int>> WeakOrder::levels() const {
  std::vector<std::vector<int>> out(num_levels());
  for (int p = 0; p < size(); ++p) out[level[p]].push_back(p);
  return out;
}

WeakOrder canonical(WeakOrder w) {
  std::vector<int> used = w.level;
  if (w.zero) used.push_back(*w.zero);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  auto rank = [&](int l) {
    return static_cast<int>(std::lower_bound(used.begin(), used.end(), l) - used.begin());
  };
  for (int& l : w.level) l = rank(l);
  if (w.zero) w.zero = rank(*w.zero);
  return w;
}

std::string to_string(const WeakOrder& w, const std::vector<std::string>& names) {
  auto name = [&](int p) {
    return p < static_cast<int>(names.size()) ? names[p] : "x" + std::to_string(p + 1);
  };
  std::string s;
  auto lv = w.levels();
  for (int l = 0; l < static_cast<int>(lv.size()); ++l) {
    if (l) s += " < ";
    s += "{";
    bool first = true;
    if (w.zero && *w.zero == l) {
      s += "0";
      first = false;
    }
    for (int p : lv[l]) {
      if (!first) s += ",";
      s += name(p);
      first = false;
    }
    s += "}";
  }
  return s.empty() ? "{}" : s;
}

WeakOrder order_type(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  WeakOrder w;
  for (double v : values)
    w.level.push_back(
        static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
  return w;
}

std::string to_string(const Move& m) {
  return (m.kind == Move::Kind::Level ? "eq " : "gap ") + std::to_string(m.index);
}

void place(WeakOrder& w, const Move& m) {
  if (m.kind == Move::Kind::Level) {
    w.level.push_back(m.index);
    return;
  }
  for (int& l : w.level)
    if (l >= m.index) ++l;
  if (w.zero && *w.zero >= m.index) ++*w.zero;
  w.level.push_back(m.index);
}

std::vector<Move> moves(int num_levels) {
  std::vector<Move> out;
  out.reserve(2 * num_levels + 1);
  for (int l = 0; l < num_levels; ++l) out.push_back({Move::Kind::Level, l});
  for (int g = 0; g <= num_levels; ++g) out.push_back({Move::Kind::Gap, g});
  return out;
}

bool eval_atom(const Atom& a, const WeakOrder& w) { return holds(a.op, w.value(a.lhs), w.value(a.rhs)); }

bool eval_clause(const Clause& c, const WeakOrder& w) {
  return std::any_of(c.begin(), c.end(), [&](const Atom& a) { return eval_atom(a, w); });
}

bool eval_qf(const QfFormula& f, const WeakOrder& w) {
  if (w.size() < f.arity) throw Error("weak order does not assign every variable");
  return std::all_of(f.clauses.begin(), f.clauses.end(),
                     [&](const Clause& c) { return eval_clause(c, w); });
}

std::uint64_t fubini(int n) {
  // a(n) = sum_{k=1..n} C(n,k) a(n-k)
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;
    for (int k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

namespace {

bool extend(WeakOrder& w, int n, const std::function<bool(const WeakOrder&)>& fn) {
  if (w.size() == n) return fn(w);
  for (const Move& m : moves(w.num_levels())) {
    WeakOrder next = w;
    place(next, m);
    if (!extend(next, n, fn)) return false;
  }
  return true;
}

}  // namespace

void for_each_weak_order(int n, const std::function<bool(const WeakOrder&)>& fn) {
  if (n < 0 || n > kMaxEnumArity)
    throw Error("weak-order enumeration limited to " + std::to_string(kMaxEnumArity) + " positions");
  WeakOrder w;
  extend(w, n, fn);
}

std::vector<WeakOrder> enumerate_weak_orders(int n) {
  std::vector<WeakOrder> out;
  if (n <= kMaxEnumArity) out.reserve(fubini(n));
  for_each_weak_order(n, [&](const WeakOrder& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

void for_each_zero_marked(int n, const std::function<bool(const WeakOrder&)>& fn) {
  if (n + 1 > kMaxEnumArity)
    throw Error("zero-marked enumeration limited to " + std::to_string(kMaxEnumArity - 1) +
                " positions");
  for_each_weak_order(n + 1, [&](const WeakOrder& w) {
    WeakOrder t{std::vector<int>(w.level.begin(), w.level.end() - 1), w.level.back()};
    return fn(t);
  });
}

const char* to_string(SymbolicOp op) {
  switch (op) {
    case SymbolicOp::pp: return "pp";
    case SymbolicOp::dual_pp: return "dual_pp";
    case SymbolicOp::ll: return "ll";
    case SymbolicOp::dual_ll: return "dual_ll";
    case SymbolicOp::lex: return "lex";
    case SymbolicOp::dual_lex: return "dual_lex";
  }
  return "?";
}

WeakOrder reversed(const WeakOrder& w) {
  int top = w.num_levels() - 1;
  WeakOrder r = w;
  for (int& l : r.level) l = top - l;
  if (r.zero) r.zero = top - *r.zero;
  return r;
}

WeakOrder apply_op(SymbolicOp op, const WeakOrder& t1, const WeakOrder& t2) {
  if (t1.size() != t2.size()) throw Error("apply_op: orders over different positions");
  switch (op) {
    case SymbolicOp::dual_pp:
      return reversed(apply_op(SymbolicOp::pp, reversed(t1), reversed(t2)));
    case SymbolicOp::dual_ll:
      return reversed(apply_op(SymbolicOp::ll, reversed(t1), reversed(t2)));
    case SymbolicOp::dual_lex:
      return reversed(apply_op(SymbolicOp::lex, reversed(t1), reversed(t2)));
    default: break;
  }
  if (op != SymbolicOp::lex && !t1.zero)
    throw Error(std::string(to_string(op)) + " needs a zero-marked first argument");

  // Sort keys realizing Definition-5 style case splits on the sign of t1.
  int n = t1.size();
  std::vector<std::array<int, 3>> key(n);
  for (int p = 0; p < n; ++p) {
    int a = t1.level[p], b = t2.level[p];
    if (op == SymbolicOp::lex) {
      key[p] = {a, b, 0};
    } else {
      bool nonpos = a <= *t1.zero;
      if (op == SymbolicOp::pp)
        key[p] = nonpos ? std::array{0, a, 0} : std::array{1, b, 0};
      else
        key[p] = nonpos ? std::array{0, a, b} : std::array{1, b, a};
    }
  }
  std::vector<std::array<int, 3>> sorted = key;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  WeakOrder out;
  for (int p = 0; p < n; ++p)
    out.level.push_back(
        static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), key[p]) - sorted.begin()));
  return out;
}

namespace {

struct Extender {
  const QfFormula& f;
  std::vector<std::vector<int>> due;  // clauses whose last variable is v

  Extender(const QfFormula& formula) : f(formula), due(formula.arity + 1) {
    for (int i = 0; i < static_cast<int>(f.clauses.size()); ++i)
      due[std::max(0, max_variable(f.clauses[i]))].push_back(i);
  }

  bool ok_upto(const WeakOrder& w, int last) const {
    for (int i : due[last])
      if (!eval_clause(f.clauses[i], w)) return false;
    return true;
  }

  bool search(WeakOrder& w) const {
    if (w.size() == f.arity) return true;
    for (const Move& m : moves(w.num_levels())) {
      WeakOrder next = w;
      place(next, m);
      if (!ok_upto(next, next.size() - 1)) continue;
      if (search(next)) {
        w = std::move(next);
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<WeakOrder> sat_exists(const QfFormula& f, const WeakOrder& bound) {
  if (bound.size() > f.arity) throw Error("sat_exists: bound order larger than formula arity");
  Extender ext(f);
  for (int v = 0; v < bound.size(); ++v)
    if (!ext.ok_upto(bound, v)) return std::nullopt;
  if (bound.size() == 0 && f.arity == 0) {
    for (int i : ext.due[0])
      if (!eval_clause(f.clauses[i], bound)) return std::nullopt;
    return bound;
  }
  WeakOrder w = bound;
  if (!ext.search(w)) return std::nullopt;
  return w;
}

bool same_relation(const QfFormula& f, const QfFormula& g, WeakOrder* witness) {
  if (f.arity != g.arity) throw ArityError("same_relation: arity mismatch");
  bool same = true;
  for_each_weak_order(f.arity, [&](const WeakOrder& w) {
    if (eval_qf(f, w) != eval_qf(g, w)) {
      same = false;
      if (witness) *witness = w;
      return false;
    }
    return true;
  });
  return same;
}

}  // namespace tqcsp
