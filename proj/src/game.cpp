#include "tqcsp/game.hpp"

#include <algorithm>

#include "tqcsp/errors.hpp"

namespace tqcsp {

std::vector<Quantifier> quantifiers(const Prefix& prefix) {
  std::vector<Quantifier> q;
  q.reserve(prefix.size());
  for (const Variable& v : prefix) q.push_back(v.quantifier);
  return q;
}

GameSolver::GameSolver(QfFormula f, std::vector<Quantifier> quants, GameLimits limits)
    : f_(std::move(f)), quants_(std::move(quants)), limits_(limits), clauses_of_(f_.arity) {
  if (static_cast<int>(quants_.size()) != f_.arity)
    throw Error("game: quantifier list does not match the formula's arity");
  if (f_.arity > limits_.max_vars)
    throw ResourceLimit("game: " + std::to_string(f_.arity) + " variables exceed max_vars " +
                        std::to_string(limits_.max_vars));
  for (int c = 0; c < static_cast<int>(f_.clauses.size()); ++c) {
    for (const Atom& a : f_.clauses[c]) {
      if (a.lhs == kZero || a.rhs == kZero) throw DialectError("game: zero marker in a clause");
      if (a.lhs < 0 || a.lhs >= f_.arity || a.rhs < 0 || a.rhs >= f_.arity)
        throw Error("game: atom refers to an undeclared variable");
    }
    last_var_.push_back(max_variable(f_.clauses[c]));
    std::vector<int> vars;
    for (const Atom& a : f_.clauses[c]) vars.insert(vars.end(), {a.lhs, a.rhs});
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (int v : vars) clauses_of_[v].push_back(c);
  }
}

GameSolver::Status GameSolver::settle(State& s) const {
  const int k = s.next;
  const int nc = static_cast<int>(f_.clauses.size());
  bool all = true;
  for (int c = 0; c < nc; ++c) {
    if (s.resolved[c]) continue;
    bool sat = false;
    for (const Atom& a : f_.clauses[c])
      if (a.lhs < k && a.rhs < k && holds(a.op, s.level[a.lhs], s.level[a.rhs])) {
        sat = true;
        break;
      }
    if (sat) {
      s.resolved[c] = 1;
    } else if (last_var_[c] < k) {
      return Status::False;
    } else {
      all = false;
    }
  }
  if (all) return Status::True;

  std::vector<char> live(k, 0);
  for (int c = 0; c < nc; ++c) {
    if (s.resolved[c]) continue;
    for (const Atom& a : f_.clauses[c]) {
      if (a.lhs < k) live[a.lhs] = 1;
      if (a.rhs < k) live[a.rhs] = 1;
    }
  }
  std::vector<int> used;
  for (int v = 0; v < k; ++v) {
    if (!live[v]) s.level[v] = -1;
    if (s.level[v] >= 0) used.push_back(s.level[v]);
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (int v = 0; v < k; ++v)
    if (s.level[v] >= 0)
      s.level[v] =
          static_cast<int>(std::lower_bound(used.begin(), used.end(), s.level[v]) - used.begin());
  return Status::Open;
}

std::vector<Move> GameSolver::moves_at(const State& s) const {
  const int k = s.next;
  bool relevant = std::any_of(clauses_of_[k].begin(), clauses_of_[k].end(),
                              [&](int c) { return !s.resolved[c]; });
  if (!relevant) return {Move{Move::Kind::Gap, 0}};
  int levels = 0;
  for (int v = 0; v < k; ++v) levels = std::max(levels, s.level[v] + 1);
  return moves(levels);
}

GameSolver::State GameSolver::child(const State& s, const Move& m) const {
  State c = s;
  const int k = s.next;
  if (m.kind == Move::Kind::Gap)
    for (int v = 0; v < k; ++v)
      if (c.level[v] >= m.index) ++c.level[v];
  c.level[k] = m.index;
  c.next = k + 1;
  return c;
}

std::string GameSolver::key(const State& s) const {
  std::string k;
  k.reserve(1 + s.next + s.resolved.size());
  k.push_back(static_cast<char>(s.next));
  for (int v = 0; v < s.next; ++v) k.push_back(static_cast<char>(s.level[v] + 1));
  for (char r : s.resolved) k.push_back(r);
  return k;
}

GameSolver::State GameSolver::start(const WeakOrder& initial) const {
  if (initial.size() > f_.arity) throw Error("game: initial order larger than the formula");
  if (initial.zero) throw DialectError("game: initial order carries a zero marker");
  State s;
  s.next = initial.size();
  s.level.assign(f_.arity, -1);
  std::copy(initial.level.begin(), initial.level.end(), s.level.begin());
  s.resolved.assign(f_.clauses.size(), 0);
  return s;
}

bool GameSolver::value(const State& s) {
  if (++nodes_ > limits_.max_nodes)
    throw ResourceLimit("game: node limit " + std::to_string(limits_.max_nodes) + " exceeded");
  std::string k = key(s);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  const bool exists = quants_[s.next] == Quantifier::Exists;
  bool result = !exists;
  for (const Move& m : moves_at(s)) {
    State c = child(s, m);
    Status st = settle(c);
    bool v = st == Status::True || (st == Status::Open && value(c));
    if (v == exists) {
      result = exists;
      break;
    }
  }
  memo_.emplace(std::move(k), result);
  return result;
}

GameVerdict GameSolver::evaluate(const WeakOrder& initial) {
  State s = start(initial);
  Status st = settle(s);
  GameVerdict g;
  g.value = st == Status::True || (st == Status::Open && value(s));
  g.nodes = nodes_;
  g.memo_entries = memo_.size();
  return g;
}

nlohmann::json GameSolver::tree(const State& s, std::uint64_t& budget) {
  if (budget-- == 0) throw ResourceLimit("game: strategy tree too large to emit");
  nlohmann::json node;
  node["var"] = s.next;
  const bool exists = quants_[s.next] == Quantifier::Exists;
  std::vector<nlohmann::json> replies;
  for (const Move& m : moves_at(s)) {
    State c = child(s, m);
    Status st = settle(c);
    bool v = st == Status::True || (st == Status::Open && value(c));
    nlohmann::json sub = st == Status::Open && v ? tree(c, budget) : nlohmann::json(v ? "win" : "loss");
    if (exists) {
      if (!v) continue;
      node["move"] = to_string(m);
      node["then"] = std::move(sub);
      return node;
    }
    replies.push_back({{"move", to_string(m)}, {"then", std::move(sub)}});
  }
  if (exists) return nullptr;
  node["replies"] = std::move(replies);
  return node;
}

nlohmann::json GameSolver::strategy(const WeakOrder& initial) {
  State s = start(initial);
  Status st = settle(s);
  if (st == Status::False) return nullptr;
  if (st == Status::True) return "win";
  if (!value(s)) return nullptr;
  std::uint64_t budget = 1'000'000;
  return tree(s, budget);
}

GameVerdict brute_solve(const QcspInstance& inst, const GameLimits& limits) {
  if (inst.num_vars() > limits.max_vars)
    throw ResourceLimit("brute: " + std::to_string(inst.num_vars()) +
                        " variables exceed max_vars " + std::to_string(limits.max_vars));
  GameSolver g(inst.cnf(), quantifiers(inst.prefix), limits);
  return g.evaluate();
}

namespace {

struct Player {
  const QfFormula& f;
  const std::vector<Quantifier>& quants;
  const EpCallback& ep;
  std::vector<int> last_var;
  PlayResult result;
  std::vector<Move> trace;

  // Index of a clause falsified by the first k variables, or -1; sets
  // `done` when every clause already holds.
  int check(const WeakOrder& w, bool& done) const {
    const int k = w.size();
    done = true;
    for (int c = 0; c < static_cast<int>(f.clauses.size()); ++c) {
      bool sat = false;
      for (const Atom& a : f.clauses[c])
        if (a.lhs < k && a.rhs < k && holds(a.op, w.level[a.lhs], w.level[a.rhs])) {
          sat = true;
          break;
        }
      if (sat) continue;
      if (last_var[c] < k) return c;
      done = false;
    }
    return -1;
  }

  bool play(const WeakOrder& w) {
    bool done = false;
    int bad = check(w, done);
    if (bad >= 0) {
      result.win = false;
      result.trace = trace;
      result.violated = bad;
      result.final_order = w;
      return false;
    }
    if (done || w.size() == f.arity) {
      ++result.plays;
      return true;
    }
    const int x = w.size();
    std::vector<Move> options;
    if (quants[x] == Quantifier::Exists) {
      Move m = ep(w, x);
      int levels = w.num_levels();
      if (m.index < 0 || (m.kind == Move::Kind::Level ? m.index >= levels : m.index > levels))
        throw Error("play_against: strategy returned an out-of-range move");
      options.push_back(m);
    } else {
      options = moves(w.num_levels());
    }
    for (const Move& m : options) {
      WeakOrder next = w;
      place(next, m);
      trace.push_back(m);
      bool ok = play(next);
      trace.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

PlayResult play_against(const QcspInstance& inst, const EpCallback& ep) {
  QfFormula f = inst.cnf();
  std::vector<Quantifier> q = quantifiers(inst.prefix);
  Player p{f, q, ep, {}, {}, {}};
  for (const Clause& c : f.clauses) p.last_var.push_back(max_variable(c));
  p.play(WeakOrder{});
  return p.result;
}

}  // namespace tqcsp
