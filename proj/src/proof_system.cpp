#include "tqcsp/proof_system.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "tqcsp/errors.hpp"

namespace tqcsp {

const char* to_string(Rule r) {
  switch (r) {
    case Rule::Init: return "Init";
    case Rule::Trans: return "Trans";
    case Rule::AltTrans: return "AltTrans";
    case Rule::Progress: return "Progress";
  }
  return "?";
}

bool FactBase::derives(int x, int z, const VarSet& a) const {
  for (int id : at(x, z))
    if (facts_[id].A.is_subset_of(a)) return true;
  return false;
}

std::vector<VarSet> FactBase::minimal_sets(int x, int z) const {
  std::vector<VarSet> out;
  for (int id : at(x, z)) {
    const VarSet& a = facts_[id].A;
    bool minimal = std::none_of(at(x, z).begin(), at(x, z).end(), [&](int other) {
      return other != id && facts_[other].A.is_proper_subset_of(a);
    });
    if (minimal) out.push_back(a);
  }
  return out;
}

std::vector<int> FactBase::bottom_chain() const {
  std::vector<int> out;
  if (!bottom_fact_) return out;
  std::vector<char> seen(facts_.size(), 0);
  // Iterative post-order over premises.
  std::vector<std::pair<int, std::size_t>> stack{{*bottom_fact_, 0}};
  seen[*bottom_fact_] = 1;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const auto& prem = facts_[id].premises;
    if (next < prem.size()) {
      int p = prem[next++];
      if (!seen[p]) {
        seen[p] = 1;
        stack.push_back({p, 0});
      }
      continue;
    }
    out.push_back(id);
    stack.pop_back();
  }
  return out;
}

namespace {

std::string format_set(const VarSet& a, const std::vector<std::string>& names) {
  std::string s = "{";
  bool first = true;
  for (auto i = a.find_first(); i != VarSet::npos; i = a.find_next(i)) {
    if (!first) s += ",";
    s += names[i];
    first = false;
  }
  return s + "}";
}

}  // namespace

std::string FactBase::format_fact(int id, const Prefix& prefix) const {
  auto names = names_of(prefix);
  const Fact& f = facts_[id];
  return "P " + names[f.x] + " " + names[f.z] + " " + format_set(f.A, names);
}

std::string FactBase::dump(const Prefix& prefix) const {
  std::vector<int> ids;
  for (int i = 0; i < static_cast<int>(facts_.size()); ++i)
    if (facts_[i].alive) ids.push_back(i);
  auto members = [&](int id) {
    std::vector<std::size_t> m;
    const VarSet& a = facts_[id].A;
    for (auto i = a.find_first(); i != VarSet::npos; i = a.find_next(i)) m.push_back(i);
    return m;
  };
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const Fact& fa = facts_[a];
    const Fact& fb = facts_[b];
    if (fa.x != fb.x) return fa.x < fb.x;
    if (fa.z != fb.z) return fa.z < fb.z;
    return members(a) < members(b);
  });
  std::string out;
  for (int id : ids) out += format_fact(id, prefix) + "\n";
  return out;
}

class Saturator {
 public:
  Saturator(const OhInstance& inst, const SaturateOptions& opts)
      : inst_(inst), opts_(opts), n_(inst.num_vars()), universal_(n_), cut_(n_ * n_, VarSet(n_)),
        in_(n_), empty_out_(n_), has_in_(n_ * n_, 0) {
    for (const OhClause& c : inst.clauses)
      if (c.partners.size() > 1 || !c.target)
        throw DialectError("saturate expects M+ triples and units, got " +
                           format_clause(c, inst.prefix));
    for (int v = 0; v < n_; ++v) universal_[v] = inst.is_universal(v);
    for (int x = 0; x < n_; ++x)
      for (int z = 0; z < n_; ++z) {
        int e = -1;
        if (!universal_[x]) e = std::max(e, x);
        if (!universal_[z]) e = std::max(e, z);
        for (int u = e + 1; u < n_; ++u)
          if (universal_[u] && u != z) cut_[x * n_ + z].set(u);
      }
    for (const OhClause& c : inst.clauses) {
      Pattern p{c.pivot, c.partners.empty() ? c.pivot : c.partners[0], *c.target};
      patterns_.push_back(p);
    }
    fb_.n_ = n_;
    fb_.table_.assign(n_ * n_, {});
    fb_.empty_.assign(n_ * n_, 0);
  }

  FactBase run() {
    for (int x = 0; x < n_; ++x)
      if (!insert(Fact{x, x, VarSet(n_), Rule::Init, {}, true})) return std::move(fb_);
    while (!queue_.empty()) {
      int id = queue_.front();
      queue_.pop_front();
      if (!fb_.facts_[id].alive) continue;
      process(id);
      for (Fact& f : pending_)
        if (!insert(std::move(f))) return std::move(fb_);
      pending_.clear();
    }
    return std::move(fb_);
  }

 private:
  // Matrix clause u = v => u >= t (units have u = v).
  struct Pattern {
    int u, v, t;
  };

  const VarSet& A(int id) const { return fb_.facts_[id].A; }
  const std::vector<int>& at(int x, int z) const { return fb_.table_[x * n_ + z]; }
  bool empty(int x, int z) const { return fb_.empty_[x * n_ + z]; }

  void derive(int x, int z, VarSet a, Rule r, std::vector<int> prem) {
    pending_.push_back(Fact{x, z, std::move(a), r, std::move(prem), true});
  }

  // Returns false when saturation must stop.
  bool insert(Fact f) {
    f.A -= cut_[f.x * n_ + f.z];
    auto& slot = fb_.table_[f.x * n_ + f.z];
    for (int id : slot) {
      const VarSet& old = A(id);
      if (opts_.prune ? old.is_subset_of(f.A) : old == f.A) return true;
    }
    if (fb_.facts_.size() >= opts_.cap) {
      fb_.status_ = SaturationStatus::CapExceeded;
      return false;
    }
    int id = static_cast<int>(fb_.facts_.size());
    if (opts_.prune) {
      std::erase_if(slot, [&](int old) {
        if (!f.A.is_subset_of(A(old))) return false;
        fb_.facts_[old].alive = false;
        return true;
      });
    }
    const int x = f.x, z = f.z;
    const bool is_empty = f.A.none();
    fb_.facts_.push_back(std::move(f));
    slot.push_back(id);
    queue_.push_back(id);
    if (!has_in_[x * n_ + z]) {
      has_in_[x * n_ + z] = 1;
      in_[z].push_back(x);
    }
    if (is_empty && !fb_.empty_[x * n_ + z]) {
      fb_.empty_[x * n_ + z] = 1;
      empty_out_[x].push_back(z);
    }
    if (is_empty && ((x < z && universal_[z]) || (z < x && universal_[x]))) {
      if (!fb_.bottom_fact_) fb_.bottom_fact_ = id;
      if (fb_.status_ == SaturationStatus::Fixpoint) fb_.status_ = SaturationStatus::Bottom;
      if (opts_.stop_at_bottom) return false;
    }
    return true;
  }

  void process(int id) {
    const int a = fb_.facts_[id].x;
    const int b = fb_.facts_[id].z;
    const bool is_empty = A(id).none();

    // Trans: P(x,y;A) & P(y,z;{}) => P(x,z;A)
    for (int z : empty_out_[b])
      for (int g : at(b, z))
        if (A(g).none()) derive(a, z, A(id), Rule::Trans, {id, g});
    if (is_empty)
      for (int x : in_[a])
        for (int g : at(x, a)) derive(x, b, A(g), Rule::Trans, {g, id});

    // AltTrans: P(x1,y;A) & P(y,x2;{}) & P(y,z;B)
    for (int x2 : empty_out_[b]) {
      int e = empty_id(b, x2);
      for (int z = 0; z < n_; ++z)
        for (int g : at(b, z)) alt_trans(a, b, x2, z, id, e, g);
    }
    if (is_empty)
      for (int x1 : in_[a])
        for (int g1 : at(x1, a))
          for (int z = 0; z < n_; ++z)
            for (int g : at(a, z)) alt_trans(x1, a, b, z, g1, id, g);
    for (int x1 : in_[a])
      for (int g1 : at(x1, a))
        for (int x2 : empty_out_[a]) alt_trans(x1, a, x2, b, g1, empty_id(a, x2), id);

    // Progress, with the new fact in each of the four premise slots.
    for (const Pattern& p : patterns_) {
      if (b == p.u)
        for (int x2 : empty_out_[p.u]) progress_rest(p, a, x2, id, empty_id(p.u, x2));
      if (is_empty && a == p.u)
        for (int x1 : in_[p.u])
          for (int g1 : at(x1, p.u)) progress_rest(p, x1, b, g1, id);
      if (b == p.v)
        for (int x1 : in_[p.u])
          for (int g1 : at(x1, p.u))
            for (int x2 : empty_out_[p.u])
              for (int x4 : empty_out_[p.v])
                progress(p, x1, x2, a, x4, g1, empty_id(p.u, x2), id, empty_id(p.v, x4));
      if (is_empty && a == p.v)
        for (int x1 : in_[p.u])
          for (int g1 : at(x1, p.u))
            for (int x2 : empty_out_[p.u])
              for (int x3 : in_[p.v])
                for (int g3 : at(x3, p.v))
                  progress(p, x1, x2, x3, b, g1, empty_id(p.u, x2), g3, id);
    }
  }

  int empty_id(int x, int z) const {
    for (int g : at(x, z))
      if (A(g).none()) return g;
    return -1;
  }

  void alt_trans(int x1, int /*y*/, int x2, int z, int f1, int f2, int f3) {
    if (f1 < 0 || f2 < 0 || f3 < 0) return;
    VarSet base = A(f1) | A(f3);
    for (int i = 0; i < 2; ++i) {
      int xi = i == 0 ? x1 : x2;
      int other = i == 0 ? x2 : x1;
      if (other != xi && !universal_[other]) continue;
      VarSet s = base;
      if (other != xi) s.set(other);
      derive(xi, z, std::move(s), Rule::AltTrans, {f1, f2, f3});
    }
  }

  // Completes premises 3 and 4 of Progress once premises 1 and 2 are fixed.
  void progress_rest(const Pattern& p, int x1, int x2, int f1, int f2) {
    for (int x3 : in_[p.v])
      for (int g3 : at(x3, p.v))
        for (int x4 : empty_out_[p.v]) progress(p, x1, x2, x3, x4, f1, f2, g3, empty_id(p.v, x4));
  }

  void progress(const Pattern& p, int x1, int x2, int x3, int x4, int f1, int f2, int f3, int f4) {
    if (f1 < 0 || f2 < 0 || f3 < 0 || f4 < 0) return;
    const int xs[4] = {x1, x2, x3, x4};
    VarSet base = A(f1) | A(f3);
    for (int i = 0; i < 4; ++i) {
      VarSet s = base;
      bool ok = true;
      for (int j = 0; j < 4 && ok; ++j) {
        if (xs[j] == xs[i]) continue;
        ok = universal_[xs[j]];
        s.set(xs[j]);
      }
      if (ok) derive(xs[i], p.t, std::move(s), Rule::Progress, {f1, f2, f3, f4});
    }
  }

  const OhInstance& inst_;
  SaturateOptions opts_;
  int n_;
  std::vector<char> universal_;
  std::vector<VarSet> cut_;
  std::vector<Pattern> patterns_;
  FactBase fb_;
  std::deque<int> queue_;
  std::vector<Fact> pending_;
  std::vector<std::vector<int>> in_;         // x with some fact (x, y), per y
  std::vector<std::vector<int>> empty_out_;  // z with P(y, z; {}), per y
  std::vector<char> has_in_;
};

FactBase saturate(const OhInstance& inst, const SaturateOptions& opts) {
  return Saturator(inst, opts).run();
}

Move ep_move(const OhInstance& inst, const FactBase& facts, const WeakOrder& partial, int x) {
  if (partial.size() != x) throw Error("ep_move: variables before x must be placed");
  if (inst.is_universal(x)) throw Error("ep_move: x is universal");
  int top = -1;
  std::set<int> reach;  // levels of y < x with P(x, y; {})
  for (int y = 0; y < x; ++y)
    if (facts.has_empty(x, y)) {
      top = std::max(top, partial.level[y]);
      reach.insert(partial.level[y]);
    }
  std::set<int> eq;
  for (int y2 = 0; y2 < x; ++y2) {
    int l = partial.level[y2];
    if (!reach.count(l) || eq.count(l)) continue;
    for (int id : facts.at(y2, x)) {
      const VarSet& a = facts.facts()[id].A;
      bool ok = true;
      for (auto v = a.find_first(); v != VarSet::npos && ok; v = a.find_next(v)) {
        int iv = static_cast<int>(v);
        ok = y2 < iv && iv < x && partial.level[iv] == l;
      }
      if (ok) {
        eq.insert(l);
        break;
      }
    }
  }
  if (eq.empty()) return Move{Move::Kind::Gap, top + 1};
  if (eq.size() == 1 && *eq.begin() == top) return Move{Move::Kind::Level, top};
  throw StrategyUndefined("no consistent position for " + inst.prefix[x].name);
}

bool check_cover(const OhInstance& inst, const FactBase& facts, const Verdict& v, int* missing) {
  std::set<OhClause> present(v.clauses.begin(), v.clauses.end());
  const auto& all = facts.facts();
  for (int id = 0; id < static_cast<int>(all.size()); ++id) {
    const Fact& f = all[id];
    if (f.x == f.z || f.A.test(f.z)) continue;
    auto lo = f.A.find_first();
    OhClause want = lo == VarSet::npos ? make_oh_clause(f.x, {}, f.z)
                                       : derived_clause(f.x, f.z, static_cast<int>(lo), inst);
    if (!present.count(want)) {
      if (missing) *missing = id;
      return false;
    }
  }
  return true;
}

}  // namespace tqcsp
