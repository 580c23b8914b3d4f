#include "tqcsp/oh_sat.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "tqcsp/errors.hpp"

namespace tqcsp {
namespace {

// Strongly connected components of a graph given in CSR form; returns the
// component id per node (ids in reverse topological order, as Tarjan emits them).
std::vector<int> tarjan(int k, const std::vector<int>& start, const std::vector<int>& adj) {
  std::vector<int> index(k, -1), low(k, 0), comp(k, -1), stack, call;
  std::vector<int> next_edge(k, 0);
  std::vector<char> on_stack(k, 0);
  int counter = 0, ncomp = 0;
  for (int root = 0; root < k; ++root) {
    if (index[root] >= 0) continue;
    call.push_back(root);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    next_edge[root] = start[root];
    while (!call.empty()) {
      int v = call.back();
      if (next_edge[v] < start[v + 1]) {
        int w = adj[next_edge[v]++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          next_edge[w] = start[w];
          call.push_back(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
    }
  }
  return comp;
}

void check_var(int v, int n) {
  if (v == kZero) throw DialectError("oh_sat does not accept the zero marker");
  if (v < 0 || v >= n) throw Error("oh_sat: variable index out of range");
}

}  // namespace

OhOracle::OhOracle(int num_vars, const std::vector<OhClause>& clauses) : n_(num_vars) {
  pivot_.reserve(clauses.size());
  for (const OhClause& c : clauses) {
    check_var(c.pivot, n_);
    pivot_.push_back(c.pivot);
    target_.push_back(c.target ? *c.target : -1);
    if (c.target) check_var(*c.target, n_);
    first_partner_.push_back(static_cast<int>(partners_.size()));
    for (int p : c.partners) {
      check_var(p, n_);
      partners_.push_back(p);
    }
  }
  first_partner_.push_back(static_cast<int>(partners_.size()));
}

int OhOracle::find(int v) const {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

bool OhOracle::unite(int a, int b) const {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (b < a) std::swap(a, b);
  parent_[b] = a;
  return true;
}

bool OhOracle::closure(const std::vector<Atom>& atoms, std::vector<OhEvent>* log,
                       std::string* reason) const {
  const int nc = num_clauses();
  parent_.resize(n_);
  std::iota(parent_.begin(), parent_.end(), 0);
  fired_.assign(nc, 0);
  edges_.clear();

  std::vector<std::pair<int, int>> strict, distinct;
  for (const Atom& a : atoms) {
    check_var(a.lhs, n_);
    check_var(a.rhs, n_);
    switch (a.op) {
      case Rel::Eq:
        if (unite(a.lhs, a.rhs) && log) log->push_back({OhEvent::Kind::MergeEq, a.lhs, a.rhs});
        break;
      case Rel::Ne: distinct.emplace_back(a.lhs, a.rhs); break;
      case Rel::Le: edges_.emplace_back(a.lhs, a.rhs); break;
      case Rel::Ge: edges_.emplace_back(a.rhs, a.lhs); break;
      case Rel::Lt:
        edges_.emplace_back(a.lhs, a.rhs);
        strict.emplace_back(a.lhs, a.rhs);
        break;
      case Rel::Gt:
        edges_.emplace_back(a.rhs, a.lhs);
        strict.emplace_back(a.rhs, a.lhs);
        break;
    }
  }

  std::vector<int> id(n_), start, adj, reps;
  for (int round = 0;; ++round) {
    if (round > n_ + 1) throw std::logic_error("oh_sat closure exceeded its round bound");
    bool changed = false;

    for (int c = 0; c < nc; ++c) {
      if (fired_[c]) continue;
      int p = find(pivot_[c]);
      bool all = true;
      for (int i = first_partner_[c]; i < first_partner_[c + 1] && all; ++i)
        all = find(partners_[i]) == p;
      if (!all) continue;
      fired_[c] = 1;
      changed = true;
      if (log) log->push_back({OhEvent::Kind::Fire, pivot_[c], target_[c], c});
      if (target_[c] < 0) {
        if (reason) *reason = "clause " + std::to_string(c) + " fired without a target";
        return false;
      }
      edges_.emplace_back(target_[c], pivot_[c]);
    }

    // Class graph in CSR form.
    reps.clear();
    for (int v = 0; v < n_; ++v)
      if (find(v) == v) {
        id[v] = static_cast<int>(reps.size());
        reps.push_back(v);
      }
    const int k = static_cast<int>(reps.size());
    start.assign(k + 1, 0);
    for (auto [a, b] : edges_) {
      int ra = find(a), rb = find(b);
      if (ra != rb) ++start[id[ra] + 1];
    }
    for (int i = 0; i < k; ++i) start[i + 1] += start[i];
    adj.assign(start[k], 0);
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (auto [a, b] : edges_) {
      int ra = find(a), rb = find(b);
      if (ra != rb) adj[fill[id[ra]]++] = id[rb];
    }
    std::vector<int> comp = tarjan(k, start, adj);
    std::vector<int> leader(k, -1);
    for (int i = 0; i < k; ++i) {
      int& l = leader[comp[i]];
      if (l < 0) {
        l = reps[i];
      } else {
        unite(l, reps[i]);
        changed = true;
        if (log) log->push_back({OhEvent::Kind::MergeCycle, l, reps[i]});
      }
    }
    if (!changed) break;
  }

  for (auto [a, b] : strict)
    if (find(a) == find(b)) {
      if (reason)
        *reason = "strict atom x" + std::to_string(a + 1) + " < x" + std::to_string(b + 1) +
                  " inside one class";
      return false;
    }
  for (auto [a, b] : distinct)
    if (find(a) == find(b)) {
      if (reason)
        *reason = "disequality x" + std::to_string(a + 1) + " != x" + std::to_string(b + 1) +
                  " inside one class";
      return false;
    }
  return true;
}

bool OhOracle::satisfiable(const std::vector<Atom>& atoms) const {
  return closure(atoms, nullptr, nullptr);
}

OhResult OhOracle::solve(const std::vector<Atom>& atoms, bool with_certificate) const {
  OhResult r;
  r.sat = closure(atoms, with_certificate ? &r.certificate : nullptr, &r.reason);
  if (!r.sat) return r;

  // Topological order of the final class DAG; every class gets its own level.
  std::vector<int> indeg(n_, 0);
  std::vector<std::vector<int>> out(n_);
  for (auto [a, b] : edges_) {
    int ra = find(a), rb = find(b);
    if (ra == rb) continue;
    out[ra].push_back(rb);
    ++indeg[rb];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n_; ++v)
    if (find(v) == v && indeg[v] == 0) ready.push(v);
  std::vector<int> level_of(n_, -1);
  int next = 0;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    level_of[v] = next++;
    for (int w : out[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  WeakOrder w;
  w.level.resize(n_);
  for (int v = 0; v < n_; ++v) {
    int l = level_of[find(v)];
    if (l < 0) throw std::logic_error("oh_sat: class graph not acyclic after closure");
    w.level[v] = l;
  }
  r.model = std::move(w);
  return r;
}

OhResult oh_sat(const OhConjunction& c) {
  OhOracle oracle(c.num_vars, c.clauses);
  return oracle.solve(c.atoms);
}

bool entails(const OhConjunction& c, const Atom& a) {
  OhOracle oracle(c.num_vars, c.clauses);
  auto unsat_with = [&](const Atom& extra) {
    std::vector<Atom> atoms = c.atoms;
    atoms.push_back(extra);
    return !oracle.satisfiable(atoms);
  };
  if (a.op == Rel::Eq)
    return unsat_with({a.lhs, Rel::Lt, a.rhs}) && unsat_with({a.rhs, Rel::Lt, a.lhs});
  return unsat_with(negated(a));
}

}  // namespace tqcsp
