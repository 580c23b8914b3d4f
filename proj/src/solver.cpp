#include "tqcsp/solver.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <set>

#include "tqcsp/errors.hpp"
#include "tqcsp/normalize.hpp"
#include "tqcsp/oh_sat.hpp"

namespace tqcsp {

std::vector<int> up_set(int u, const OhInstance& inst) {
  std::vector<int> out;
  for (int y = u; y < inst.num_vars(); ++y)
    if (inst.is_universal(y)) out.push_back(y);
  return out;
}

namespace {

// Index of the last existential among {x, z}, or -1.
int last_existential(int x, int z, const OhInstance& inst) {
  int e = -1;
  if (!inst.is_universal(x)) e = std::max(e, x);
  if (!inst.is_universal(z)) e = std::max(e, z);
  return e;
}

std::vector<Atom> test_atoms(int x, int z, int u, const OhInstance& inst) {
  std::vector<Atom> atoms;
  for (int v : up_set(u, inst))
    if (v != x && v != z) atoms.push_back({x, Rel::Eq, v});
  atoms.push_back({x, Rel::Lt, z});
  return atoms;
}

bool rejects(const OhClause& c, const OhInstance& inst) {
  if (!c.is_unit()) return false;
  int a = c.pivot, b = *c.target;
  int later = std::max(a, b);
  return a != b && inst.is_universal(later);
}

void check_dialect(const OhInstance& inst) {
  for (const OhClause& c : inst.clauses)
    if (c.partners.size() > 1 || !c.target)
      throw DialectError("solve expects M+ triples and units; compile the instance first (clause " +
                         format_clause(c, inst.prefix) + ")");
}

class Solver {
 public:
  Solver(const OhInstance& inst, const SolveOptions& opts)
      : inst_(inst), opts_(opts), n_(inst.num_vars()), next_univ_(n_ + 1, n_), unit_(n_ * n_, 0),
        unsat_upto_(n_ * n_, -1), sat_from_(n_ * n_, INT_MAX), sat_version_(n_ * n_, -1) {
    for (int i = n_ - 1; i >= 0; --i) next_univ_[i] = inst.is_universal(i) ? i : next_univ_[i + 1];
    v_.prefix = inst.prefix;
    for (const OhClause& c : inst.clauses) add(c);
    v_.num_matrix = static_cast<int>(v_.clauses.size());
  }

  Verdict run() {
    bool changed = true;
    while (changed) {
      changed = false;
      ++v_.passes;
      for (int x = 0; x < n_; ++x)
        for (int z = 0; z < n_; ++z) {
          if (x == z) continue;
          for (int u = 0; u < n_; ++u) {
            if (check_reject(x, z) && opts_.stop_on_reject) return finish();
            if (!unsat(x, z, u)) continue;
            auto [idx, fresh] = add(derived_clause(x, z, u, inst_));
            changed |= fresh;
            if (fresh || opts_.record_duplicates) v_.log.push_back({x, z, u, idx, fresh});
          }
        }
    }
    return finish();
  }

 private:
  Verdict finish() {
    v_.value = !v_.rejecting_clause.has_value();
    return std::move(v_);
  }

  bool check_reject(int x, int z) {
    if (v_.rejecting_clause) return true;
    if (!(x < z) || !inst_.is_universal(z)) return false;
    for (auto [a, b] : {std::pair{x, z}, std::pair{z, x}})
      if (unit_[a * n_ + b]) {
        v_.rejecting_clause = unit_index_.at({a, b});
        return true;
      }
    return false;
  }

  // First universal at or after u other than x and z; it determines the
  // equality set of the (x, z, u) test.
  int start_of(int x, int z, int u) const {
    int y = next_univ_[u];
    while (y < n_ && (y == x || y == z)) y = next_univ_[y + 1];
    return y;
  }

  bool unsat(int x, int z, int u) {
    int s = start_of(x, z, u);
    int k = x * n_ + z;
    if (opts_.reuse_answers) {
      if (s <= unsat_upto_[k]) return true;
      if (sat_version_[k] == version_ && s >= sat_from_[k]) return false;
    }
    if (dirty_) rebuild_oracle();
    ++v_.oracle_calls;
    bool sat = oracle_->satisfiable(test_atoms(x, z, u, inst_));
    if (!sat) {
      unsat_upto_[k] = std::max(unsat_upto_[k], s);
    } else {
      sat_from_[k] = sat_version_[k] == version_ ? std::min(sat_from_[k], s) : s;
      sat_version_[k] = version_;
    }
    return !sat;
  }

  std::pair<int, bool> add(const OhClause& c) {
    auto [it, fresh] = index_.emplace(c, static_cast<int>(v_.clauses.size()));
    if (!fresh) return {it->second, false};
    int idx = it->second;
    v_.clauses.push_back(c);
    if (c.is_unit() && !unit_[c.pivot * n_ + *c.target]) {
      unit_[c.pivot * n_ + *c.target] = 1;
      unit_index_[{c.pivot, *c.target}] = idx;
    }
    add_working(idx);
    ++version_;
    return {idx, true};
  }

  // Keeps only clauses whose partner set is minimal for their (pivot, target);
  // the dropped ones are implied, so the oracle's answers are unchanged.
  void add_working(int idx) {
    const OhClause& c = v_.clauses[idx];
    auto& group = groups_[{c.pivot, *c.target}];
    for (int j : group) {
      const auto& p = v_.clauses[j].partners;
      if (std::includes(c.partners.begin(), c.partners.end(), p.begin(), p.end())) return;
    }
    std::erase_if(group, [&](int j) {
      const auto& p = v_.clauses[j].partners;
      return std::includes(p.begin(), p.end(), c.partners.begin(), c.partners.end());
    });
    group.push_back(idx);
    dirty_ = true;
  }

  void rebuild_oracle() {
    std::vector<OhClause> working;
    for (const auto& [key, group] : groups_)
      for (int j : group) working.push_back(v_.clauses[j]);
    oracle_ = std::make_unique<OhOracle>(n_, working);
    dirty_ = false;
  }

  const OhInstance& inst_;
  SolveOptions opts_;
  int n_;
  std::vector<int> next_univ_;
  Verdict v_;
  std::map<OhClause, int> index_;
  std::vector<char> unit_;
  std::map<std::pair<int, int>, int> unit_index_;
  std::map<std::pair<int, int>, std::vector<int>> groups_;
  std::unique_ptr<OhOracle> oracle_;
  bool dirty_ = true;
  int version_ = 0;
  std::vector<int> unsat_upto_;
  std::vector<int> sat_from_;
  std::vector<int> sat_version_;
};

}  // namespace

std::vector<int> cut(int x, int z, const OhInstance& inst) {
  int e = last_existential(x, z, inst);
  std::vector<int> out;
  for (int u = e + 1; u < inst.num_vars(); ++u)
    if (inst.is_universal(u) && u != z) out.push_back(u);
  return out;
}

OhClause derived_clause(int x, int z, int u, const OhInstance& inst) {
  int e = last_existential(x, z, inst);
  std::vector<int> partners;
  for (int v : up_set(u, inst))
    if (v != x && v != z && v <= e) partners.push_back(v);
  return make_oh_clause(x, std::move(partners), z);
}

bool Verdict::contains(const OhClause& c) const {
  return std::find(clauses.begin(), clauses.end(), c) != clauses.end();
}

Verdict solve(const OhInstance& inst, const SolveOptions& opts) {
  check_dialect(inst);
  return Solver(inst, opts).run();
}

bool replay_certificate(const OhInstance& inst, const Verdict& v) {
  if (v.num_matrix > static_cast<int>(v.clauses.size())) return false;
  std::vector<OhClause> phi(v.clauses.begin(), v.clauses.begin() + v.num_matrix);
  for (const DerivationEvent& e : v.log) {
    if (e.clause < 0 || e.clause >= static_cast<int>(v.clauses.size())) return false;
    OhClause c = derived_clause(e.x, e.z, e.u, inst);
    if (!(v.clauses[e.clause] == c)) return false;
    OhOracle oracle(inst.num_vars(), phi);
    if (oracle.satisfiable(test_atoms(e.x, e.z, e.u, inst))) return false;
    bool present = std::find(phi.begin(), phi.end(), c) != phi.end();
    if (present == e.fresh) return false;
    if (e.fresh) phi.push_back(c);
  }
  if (v.rejecting_clause) {
    if (*v.rejecting_clause >= static_cast<int>(v.clauses.size())) return false;
    const OhClause& r = v.clauses[*v.rejecting_clause];
    if (!rejects(r, inst) || std::find(phi.begin(), phi.end(), r) == phi.end()) return false;
  }
  return v.value == !v.rejecting_clause.has_value();
}

bool is_pure_mplus(const OhInstance& inst) {
  return std::all_of(inst.clauses.begin(), inst.clauses.end(), [](const OhClause& c) {
    return c.partners.size() <= 1 && c.target.has_value();
  });
}

OhInstance compile_to_mplus(const OhInstance& inst) {
  OhInstance out{inst.prefix, {}};
  std::set<std::string> taken;
  for (const Variable& v : inst.prefix) taken.insert(v.name);
  auto fresh = [&](const std::string& base, Quantifier q) {
    std::string name = base;
    for (int k = 1; taken.count(name); ++k) name = base + "_" + std::to_string(k);
    taken.insert(name);
    out.prefix.push_back({name, q});
    return out.num_vars() - 1;
  };
  auto mplus = [&](int a, int b, int c) { out.clauses.push_back(make_oh_clause(a, {b}, c)); };
  auto unit = [&](int a, int c) { out.clauses.push_back(make_oh_clause(a, {}, c)); };

  for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
    const OhClause& c = inst.clauses[i];
    std::string tag = std::to_string(i + 1);
    int target = c.target ? *c.target : fresh("_z" + tag, Quantifier::Forall);
    const auto& ys = c.partners;
    if (ys.empty()) {
      unit(c.pivot, target);
    } else if (ys.size() == 1) {
      mplus(c.pivot, ys[0], target);
    } else {
      int x = c.pivot;
      int h = fresh("_h" + tag + "_2", Quantifier::Exists);
      mplus(x, ys[0], h);
      for (std::size_t j = 1; j < ys.size(); ++j) {
        unit(h, x);
        int next = j + 1 < ys.size()
                       ? fresh("_h" + tag + "_" + std::to_string(j + 2), Quantifier::Exists)
                       : target;
        mplus(h, ys[j], next);
        h = next;
      }
    }
  }
  return out;
}

Verdict solve_general(const QcspInstance& inst, const SolveOptions& opts) {
  OhInstance oh = normalize(inst);
  if (!is_pure_mplus(oh)) oh = compile_to_mplus(oh);
  return solve(oh, opts);
}

}  // namespace tqcsp
