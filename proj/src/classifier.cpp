#include "tqcsp/classifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "tqcsp/errors.hpp"
#include "tqcsp/game.hpp"

namespace tqcsp {
namespace {

void check_arity(int n, const char* what) {
  if (n > kMaxClassifyArity)
    throw ArityError(std::string(what) + ": arity " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxClassifyArity));
}

// ---- rewriting over {!=, >=} -------------------------------------------------

struct Basic {
  bool ge;  // a >= b, otherwise a != b
  int a;
  int b;
  auto operator<=>(const Basic&) const = default;
};

std::vector<Basic> basic(const Atom& t) {
  int a = t.lhs, b = t.rhs;
  switch (t.op) {
    case Rel::Ne: return {{false, std::min(a, b), std::max(a, b)}};
    case Rel::Ge: return {{true, a, b}};
    case Rel::Le: return {{true, b, a}};
    case Rel::Gt: return {{true, a, b}, {false, std::min(a, b), std::max(a, b)}};
    case Rel::Lt: return {{true, b, a}, {false, std::min(a, b), std::max(a, b)}};
    case Rel::Eq: return {{true, a, b}, {true, b, a}};
  }
  return {};
}

// Clauses over {!=, >=} equivalent to c; tautologies are dropped and x != x
// literals removed.
std::vector<std::set<Basic>> basic_clauses(const Clause& c) {
  std::vector<std::set<Basic>> out{{}};
  for (const Atom& t : c) {
    std::vector<std::set<Basic>> next;
    for (const auto& partial : out)
      for (const Basic& lit : basic(t)) {
        auto grown = partial;
        grown.insert(lit);
        next.push_back(std::move(grown));
      }
    out = std::move(next);
  }
  std::vector<std::set<Basic>> kept;
  for (auto& cl : out) {
    bool taut = std::any_of(cl.begin(), cl.end(), [](const Basic& l) { return l.ge && l.a == l.b; });
    if (taut) continue;
    std::erase_if(cl, [](const Basic& l) { return !l.ge && l.a == l.b; });
    kept.push_back(std::move(cl));
  }
  return kept;
}

bool pp_clause(const std::set<Basic>& cl) {
  std::optional<int> pivot;
  for (const Basic& l : cl)
    if (l.ge) {
      if (pivot && *pivot != l.a) return false;
      pivot = l.a;
    }
  std::vector<int> candidates;
  if (pivot) {
    candidates = {*pivot};
  } else {
    auto first = std::find_if(cl.begin(), cl.end(), [](const Basic& l) { return !l.ge; });
    if (first == cl.end()) return true;
    candidates = {first->a, first->b};
  }
  return std::any_of(candidates.begin(), candidates.end(), [&](int x) {
    return std::all_of(cl.begin(), cl.end(),
                       [&](const Basic& l) { return l.ge || l.a == x || l.b == x; });
  });
}

// ---- guarded Ord-Horn recognizer ---------------------------------------------

enum class GKind : char { Le, Lt, Ne };

struct GLit {
  GKind kind;
  int a;
  int b;
  auto operator<=>(const GLit&) const = default;
};

using GClause = std::vector<GLit>;  // sorted, unique

std::optional<std::vector<GClause>> goh_clauses(const QfFormula& f) {
  std::vector<GClause> out;
  for (const Clause& c : f.clauses) {
    if (c.size() == 1 && c[0].op == Rel::Eq) {
      out.push_back({{GKind::Le, c[0].lhs, c[0].rhs}});
      out.push_back({{GKind::Le, c[0].rhs, c[0].lhs}});
      continue;
    }
    std::set<GLit> lits;
    bool taut = false;
    for (const Atom& t : c) {
      int a = t.lhs, b = t.rhs;
      switch (t.op) {
        case Rel::Eq: return std::nullopt;
        case Rel::Ne:
          if (a != b) lits.insert({GKind::Ne, std::min(a, b), std::max(a, b)});
          break;
        case Rel::Le:
        case Rel::Ge:
          if (t.op == Rel::Ge) std::swap(a, b);
          if (a == b) taut = true;
          lits.insert({GKind::Le, a, b});
          break;
        case Rel::Lt:
        case Rel::Gt:
          if (t.op == Rel::Gt) std::swap(a, b);
          if (a != b) lits.insert({GKind::Lt, a, b});
          break;
      }
    }
    if (!taut) out.emplace_back(lits.begin(), lits.end());
  }
  return out;
}

bool goh_base(const GClause& c) {
  int le = 0, lt = 0;
  const GLit* strict = nullptr;
  for (const GLit& l : c) {
    if (l.kind == GKind::Le) ++le;
    if (l.kind == GKind::Lt) {
      ++lt;
      strict = &l;
    }
  }
  if (le == 1 && c.size() == 1) return true;
  if (le > 0 || lt > 1) return false;
  if (lt == 0) return true;
  int x = strict->a, y = strict->b;
  return std::all_of(c.begin(), c.end(), [&](const GLit& l) {
    return l.kind == GKind::Lt || l.a == x || l.b == x || l.a == y || l.b == y;
  });
}

bool is_guard(const GClause& c) {
  return !c.empty() &&
         std::all_of(c.begin(), c.end(), [](const GLit& l) { return l.kind == GKind::Le; });
}

GClause guard_neqs(const GClause& g) {
  std::set<GLit> out;
  for (const GLit& l : g) out.insert({GKind::Ne, std::min(l.a, l.b), std::max(l.a, l.b)});
  return {out.begin(), out.end()};
}

bool contains_all(const GClause& c, const GClause& sub) {
  return std::includes(c.begin(), c.end(), sub.begin(), sub.end());
}

class GohParser {
 public:
  bool parse(std::vector<GClause> s) {
    std::sort(s.begin(), s.end());
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    bool r = attempt(s);
    memo_.emplace(std::move(s), r);
    return r;
  }

 private:
  bool attempt(const std::vector<GClause>& s) {
    auto bad = std::find_if(s.begin(), s.end(), [](const GClause& c) { return !goh_base(c); });
    if (bad == s.end()) return true;
    const int c = static_cast<int>(bad - s.begin());
    const int n = static_cast<int>(s.size());
    for (int g = 0; g < n; ++g) {
      if (!is_guard(s[g])) continue;
      GClause neqs = guard_neqs(s[g]);
      if (g != c && !contains_all(s[c], neqs)) continue;
      std::vector<int> pool;
      for (int j = 0; j < n; ++j)
        if (j != g && contains_all(s[j], neqs)) pool.push_back(j);
      const int p = static_cast<int>(pool.size());
      std::vector<std::uint64_t> masks;
      if (p <= 10) {
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << p); ++m) masks.push_back(m);
      } else {
        masks.push_back((std::uint64_t{1} << p) - 1);
      }
      for (std::uint64_t m : masks) {
        std::vector<char> used(n, 0);
        used[g] = 1;
        std::vector<GClause> inner;
        bool ok = true;
        for (int i = 0; i < p; ++i) {
          if (!(m >> i & 1)) continue;
          used[pool[i]] = 1;
          GClause rest;
          std::set_difference(s[pool[i]].begin(), s[pool[i]].end(), neqs.begin(), neqs.end(),
                              std::back_inserter(rest));
          if (rest.empty()) ok = false;
          inner.push_back(std::move(rest));
        }
        if (!ok || !used[c]) continue;
        std::vector<GClause> outer;
        for (int j = 0; j < n; ++j)
          if (!used[j]) outer.push_back(s[j]);
        if (parse(inner) && parse(outer)) return true;
      }
    }
    return false;
  }

  std::map<std::vector<GClause>, bool> memo_;
};

// ---- helpers ---------------------------------------------------------------

bool subset(const QfFormula& f, const QfFormula& g, WeakOrder* witness = nullptr) {
  if (f.arity != g.arity) throw ArityError("relation arities differ");
  bool ok = true;
  for_each_weak_order(f.arity, [&](const WeakOrder& w) {
    if (eval_qf(f, w) && !eval_qf(g, w)) {
      ok = false;
      if (witness) *witness = w;
      return false;
    }
    return true;
  });
  return ok;
}

void append(std::vector<Clause>& out, const TemporalRelation& r, const std::vector<int>& args) {
  for (Clause& c : instantiate(r, args)) out.push_back(std::move(c));
}

const QfFormula& defn(std::string_view name) {
  static std::map<std::string, QfFormula, std::less<>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(std::string(name), catalogue(name).defn).first;
  return it->second;
}

void build_pp(int k, int x, const std::vector<int>& ys, int z, int& next, std::vector<Clause>& out) {
  static const TemporalRelation mplus = catalogue("M+");
  if (k == 1) {
    append(out, mplus, {x, ys[0], z});
    return;
  }
  int h = next++;
  build_pp(k - 1, x, std::vector<int>(ys.begin(), ys.begin() + (k - 1)), h, next, out);
  append(out, mplus, {h, h, x});
  append(out, mplus, {h, ys[k - 1], z});
}

}  // namespace

Preservation is_preserved_by(const TemporalRelation& r, SymbolicOp op) {
  check_arity(r.arity, "is_preserved_by");
  std::vector<WeakOrder> first, second;
  for_each_zero_marked(r.arity, [&](const WeakOrder& w) {
    if (eval_qf(r.defn, w)) first.push_back(w);
    return true;
  });
  for_each_weak_order(r.arity, [&](const WeakOrder& w) {
    if (eval_qf(r.defn, w)) second.push_back(w);
    return true;
  });
  for (const WeakOrder& t1 : first)
    for (const WeakOrder& t2 : second)
      if (!eval_qf(r.defn, apply_op(op, t1, t2))) return {false, std::pair{t1, t2}};
  return {};
}

bool is_oh(const TemporalRelation& r) {
  return is_preserved_by(r, SymbolicOp::ll) && is_preserved_by(r, SymbolicOp::dual_ll);
}

bool oh_syntactic(const QfFormula& f) {
  for (const Clause& c : f.clauses)
    for (const auto& cl : basic_clauses(c))
      if (std::count_if(cl.begin(), cl.end(), [](const Basic& l) { return l.ge; }) > 1)
        return false;
  return true;
}

bool ppsynt_shape(const QfFormula& f) {
  for (const Clause& c : f.clauses)
    for (const auto& cl : basic_clauses(c))
      if (!pp_clause(cl)) return false;
  return true;
}

bool goh_syntactic(const QfFormula& f) {
  auto clauses = goh_clauses(f);
  if (!clauses) return false;
  return GohParser().parse(*clauses);
}

QfFormula elim_min(const QfFormula& f) {
  if (f.arity <= kMaxClassifyArity &&
      !is_oh(TemporalRelation{"elim_min input", f.arity, f}))
    throw HypothesisViolation("elim_min: input relation is not OH");
  QfFormula cur = f;
  for (Clause& clause : cur.clauses) {
    // (pivot, target) of a >= disjunct, if it is one.
    auto ge = [](const Atom& t) -> std::optional<std::pair<int, int>> {
      if (t.op == Rel::Ge) return std::pair{t.lhs, t.rhs};
      if (t.op == Rel::Le) return std::pair{t.rhs, t.lhs};
      return std::nullopt;
    };
    std::set<std::pair<int, int>> seen;
    std::erase_if(clause, [&](const Atom& t) {
      auto g = ge(t);
      return g && !seen.insert(*g).second;
    });
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(clause.size()); ++i)
      if (auto g = ge(clause[i])) groups[g->first].push_back(i);
    std::vector<char> drop(clause.size(), 0);
    for (const auto& [pivot, idx] : groups) {
      if (idx.size() < 2) continue;
      bool found = false;
      for (int keep : idx) {
        Clause trial;
        for (int i = 0; i < static_cast<int>(clause.size()); ++i) {
          bool in_group = std::find(idx.begin(), idx.end(), i) != idx.end();
          if (drop[i] || (in_group && i != keep)) continue;
          trial.push_back(clause[i]);
        }
        Clause saved = clause;
        clause = trial;
        bool same = same_relation(f, cur);
        clause = saved;
        if (same) {
          for (int i : idx)
            if (i != keep) drop[i] = 1;
          found = true;
          break;
        }
      }
      if (!found)
        throw NoValidIndex("elim_min: no single >= disjunct on pivot x" + std::to_string(pivot + 1) +
                           " keeps the relation");
    }
    Clause kept;
    for (int i = 0; i < static_cast<int>(clause.size()); ++i)
      if (!drop[i]) kept.push_back(clause[i]);
    clause = std::move(kept);
  }
  return cur;
}

QfFormula mu(int k) {
  if (k < 1) throw Error("mu: k must be positive");
  Clause c;
  for (int i = 1; i <= k; ++i) c.push_back({0, Rel::Ne, i});
  c.push_back({0, Rel::Ge, k + 1});
  return QfFormula{k + 2, {c}};
}

PpDefinition pp_def_mplus(int k) {
  if (k < 1 || k > 5) throw Error("pp_def_mplus: k must lie in 1..5");
  std::vector<int> ys;
  for (int i = 1; i <= k; ++i) ys.push_back(i);
  int next = k + 2;
  std::vector<Clause> clauses;
  build_pp(k, 0, ys, k + 1, next, clauses);
  return PpDefinition{QfFormula{next, std::move(clauses)}, k + 2};
}

bool defines(const PpDefinition& d, const QfFormula& g, WeakOrder* witness) {
  if (g.arity != d.num_free) throw ArityError("defines: arity mismatch");
  bool ok = true;
  for_each_weak_order(d.num_free, [&](const WeakOrder& w) {
    if (sat_exists(d.matrix, w).has_value() != eval_qf(g, w)) {
      ok = false;
      if (witness) *witness = w;
      return false;
    }
    return true;
  });
  return ok;
}

bool verify_sandwich(const TemporalRelation& r, const TemporalRelation& lower,
                     const TemporalRelation& upper, WeakOrder* witness) {
  if (r.arity != lower.arity || r.arity != upper.arity)
    throw ArityError("verify_sandwich: arity mismatch");
  check_arity(r.arity, "verify_sandwich");
  return subset(lower.defn, r.defn, witness) && subset(r.defn, upper.defn, witness);
}

Gadget short_tool_gadget(GadgetKind kind, const std::vector<TemporalRelation>& inputs) {
  static const TemporalRelation mplus = catalogue("M+");
  auto input = [&](std::string_view fallback) {
    return inputs.empty() ? catalogue(fallback) : inputs.front();
  };
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw HypothesisViolation("short_tool_gadget: " + what);
  };
  auto arity = [](const TemporalRelation& r, int n) {
    if (r.arity != n)
      throw HypothesisViolation("short_tool_gadget: " + r.name + " must have arity " +
                                std::to_string(n));
  };
  Gadget g;
  g.kind = kind;
  std::vector<Clause> cs;
  switch (kind) {
    case GadgetKind::LeFromMplus:
      g.num_free = 2;
      g.names = {"x", "y"};
      append(cs, mplus, {1, 1, 0});
      g.lower = g.upper = QfFormula{2, {{{0, Rel::Le, 1}}}};
      break;
    case GadgetKind::NeFromMplus:
      g.num_free = 2;
      g.bound = {Quantifier::Forall};
      g.names = {"x", "y", "z"};
      append(cs, mplus, {0, 1, 2});
      g.lower = g.upper = QfFormula{2, {{{0, Rel::Ne, 1}}}};
      break;
    case GadgetKind::LtFromMplus:
      g.num_free = 2;
      g.bound = {Quantifier::Forall};
      g.names = {"x", "y", "z"};
      append(cs, mplus, {1, 1, 0});
      append(cs, mplus, {0, 1, 2});
      g.lower = g.upper = QfFormula{2, {{{0, Rel::Lt, 1}}}};
      break;
    case GadgetKind::StrictFromM: {
      TemporalRelation r = input("M-");
      cs = r.defn.clauses;
      if (r.arity == 3) {
        need(subset(defn("GM-"), r.defn) && subset(r.defn, defn("M-")),
             r.name + " is not a dual M-relation");
        g.names = {"x1", "x2", "x3"};
        cs.push_back({{0, Rel::Ne, 2}});
        cs.push_back({{1, Rel::Ne, 2}});
        g.lower = defn("GVM<-");
        g.upper = defn("M<-");
      } else {
        arity(r, 4);
        bool lr = subset(defn("lrGSM"), r.defn);
        need((lr || subset(defn("rlGSM"), r.defn)) && !subset(r.defn, defn("SM<")) &&
                 !subset(r.defn, defn("SD")) && subset(r.defn, defn("SM")),
             r.name + " is not a separated M-relation");
        g.names = {"x1", "x2", "x3", "x4"};
        cs.push_back({{2, Rel::Ne, 3}});
        g.lower = defn(lr ? "lrGSM<" : "rlGSM<");
        g.upper = defn("SM<");
      }
      g.num_free = r.arity;
      break;
    }
    case GadgetKind::DisFromSepStrict: {
      TemporalRelation r = input("SM<");
      arity(r, 4);
      need((subset(defn("lrGSM<"), r.defn) || subset(defn("rlGSM<"), r.defn)) &&
               subset(r.defn, defn("SM<")),
           r.name + " is not a separated strict M-relation");
      g.num_free = 4;
      g.bound = {Quantifier::Exists, Quantifier::Exists};
      g.names = {"x1", "x2", "x3", "x4", "a", "b"};
      append(cs, r, {1, 0, 4, 5});
      append(cs, r, {3, 2, 5, 4});
      g.lower = defn("GSN");
      g.upper = defn("Dis");
      break;
    }
    case GadgetKind::DisFromDualStrict: {
      TemporalRelation r = input("M<-");
      arity(r, 3);
      need(subset(defn("GVM<-"), r.defn) && subset(r.defn, defn("M<-")),
           r.name + " is not a dual strict M-relation");
      g.num_free = 4;
      g.bound = {Quantifier::Exists};
      g.names = {"x1", "y1", "x2", "y2", "h"};
      append(cs, mplus, {0, 1, 4});
      append(cs, r, {2, 3, 4});
      cs.push_back({{0, Rel::Le, 2}});
      g.lower = defn("GSN");
      g.upper = defn("Dis");
      break;
    }
    case GadgetKind::ZFromSepDis: {
      TemporalRelation r = input("GSN");
      arity(r, 4);
      need(subset(defn("GSN"), r.defn) && subset(r.defn, defn("Dis")),
           r.name + " is not a separated disjunction of disequalities");
      g.num_free = 4;
      g.bound = {Quantifier::Exists, Quantifier::Exists};
      g.names = {"x1", "y1", "x2", "y2", "v1", "v2"};
      const int x1 = 0, y1 = 1, x2 = 2, y2 = 3, v1 = 4, v2 = 5;
      // GSN(x1, v1, x2, v2) from R together with < and <=.
      append(cs, r, {x1, v1, x2, v2});
      cs.push_back({{x1, Rel::Le, v1}});
      cs.push_back({{x2, Rel::Le, v2}});
      for (int a : {x1, v1})
        for (int b : {x2, v2}) cs.push_back({{a, Rel::Lt, b}});
      append(cs, mplus, {y1, x1, v1});
      append(cs, mplus, {y2, x2, v2});
      g.lower = g.upper = QfFormula{4, {{{y1, Rel::Ne, x1}, {y2, Rel::Ne, x2}}, {{x1, Rel::Lt, x2}}}};
      break;
    }
  }
  g.matrix = QfFormula{g.num_free + static_cast<int>(g.bound.size()), std::move(cs)};
  return g;
}

std::vector<WeakOrder> gadget_relation(const Gadget& g) {
  std::vector<Quantifier> quants(g.num_free, Quantifier::Exists);
  quants.insert(quants.end(), g.bound.begin(), g.bound.end());
  GameSolver solver(g.matrix, quants, GameLimits{g.matrix.arity, 100'000'000});
  std::vector<WeakOrder> out;
  for_each_weak_order(g.num_free, [&](const WeakOrder& w) {
    if (solver.evaluate(w).value) out.push_back(w);
    return true;
  });
  return out;
}

bool check_gadget(const Gadget& g, WeakOrder* witness) {
  std::vector<WeakOrder> rel = gadget_relation(g);
  std::set<WeakOrder> in(rel.begin(), rel.end());
  bool ok = true;
  for_each_weak_order(g.num_free, [&](const WeakOrder& w) {
    bool member = in.count(w) > 0;
    if ((eval_qf(g.lower, w) && !member) || (member && !eval_qf(g.upper, w))) {
      ok = false;
      if (witness) *witness = w;
      return false;
    }
    return true;
  });
  return ok;
}

ClassReport classify(const std::vector<TemporalRelation>& rels) {
  ClassReport rep;
  QfFormula all;
  for (const TemporalRelation& r : rels) {
    check_arity(r.arity, "classify");
    rep.oh_semantic = rep.oh_semantic && is_oh(r);
    rep.oh_syntactic = rep.oh_syntactic && oh_syntactic(r.defn);
    rep.ppsynt_shape = rep.ppsynt_shape && ppsynt_shape(r.defn);
    rep.goh_syntactic = rep.goh_syntactic && goh_syntactic(r.defn);
    for (SymbolicOp op : {SymbolicOp::pp, SymbolicOp::dual_pp}) {
      Preservation p = is_preserved_by(r, op);
      if (p) continue;
      (op == SymbolicOp::pp ? rep.pp_preserved : rep.dual_pp_preserved) = false;
      rep.witnesses.push_back({r.name, op, p.witness->first, p.witness->second});
    }
  }
  if (rep.goh_syntactic) {
    rep.verdict = "P";
    rep.via = "GOH-parse";
  } else if (rep.oh_semantic && rep.pp_preserved) {
    rep.verdict = "P";
    rep.via = "pp";
  } else if (rep.oh_semantic && rep.dual_pp_preserved) {
    rep.verdict = "P";
    rep.via = "dual-pp";
  } else {
    rep.verdict = rep.oh_semantic ? "coNP-hard-unless-GOH-definable" : "outside-OH";
  }
  return rep;
}

}  // namespace tqcsp
