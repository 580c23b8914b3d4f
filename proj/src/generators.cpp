#include "tqcsp/generators.hpp"

#include <set>

namespace tqcsp {

OhInstance chain_instance(int n) {
  OhInstance out;
  auto add = [&](std::string name, Quantifier q) {
    out.prefix.push_back({std::move(name), q});
    return out.num_vars() - 1;
  };
  int prev = add("c0", Quantifier::Exists);
  for (int i = 1; i <= n; ++i) {
    int y0 = add("y" + std::to_string(i) + "_0", Quantifier::Forall);
    int y1 = add("y" + std::to_string(i) + "_1", Quantifier::Forall);
    int c = add("c" + std::to_string(i), Quantifier::Exists);
    out.clauses.push_back(make_oh_clause(prev, {y0}, c));
    out.clauses.push_back(make_oh_clause(prev, {y1}, c));
    out.clauses.push_back(make_oh_clause(c, {}, prev));
    prev = c;
  }
  return out;
}

namespace {

Prefix prefix_of(int n, std::uint32_t universal_mask) {
  Prefix p;
  for (int i = 0; i < n; ++i)
    p.push_back({"x" + std::to_string(i + 1),
                 (universal_mask >> i & 1) ? Quantifier::Forall : Quantifier::Exists});
  return p;
}

}  // namespace

OhInstance random_mplus(Rng& rng, int num_vars, int num_clauses) {
  std::uniform_int_distribution<int> var(0, num_vars - 1);
  std::uniform_int_distribution<std::uint32_t> mask(0, (1u << num_vars) - 1);
  OhInstance out{prefix_of(num_vars, mask(rng)), {}};
  for (int i = 0; i < num_clauses; ++i) {
    int x = var(rng), y = var(rng), z = var(rng);
    out.clauses.push_back(make_oh_clause(x, {y}, z));
  }
  return out;
}

void for_each_small_mplus(int max_vars, int max_clauses,
                          const std::function<bool(const OhInstance&)>& fn) {
  for (int n = 1; n <= max_vars; ++n) {
    std::set<OhClause> distinct;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) distinct.insert(make_oh_clause(x, {y}, z));
    std::vector<OhClause> pool(distinct.begin(), distinct.end());
    const int p = static_cast<int>(pool.size());
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      OhInstance inst{prefix_of(n, mask), {}};
      // Increasing index tuples of length 0..max_clauses.
      std::function<bool(int)> rec = [&](int from) {
        if (!fn(inst)) return false;
        if (static_cast<int>(inst.clauses.size()) == max_clauses) return true;
        for (int i = from; i < p; ++i) {
          inst.clauses.push_back(pool[i]);
          bool go = rec(i + 1);
          inst.clauses.pop_back();
          if (!go) return false;
        }
        return true;
      };
      if (!rec(0)) return;
    }
  }
}

OhConjunction random_oh_conjunction(Rng& rng, int num_vars, int num_clauses, int max_partners,
                                    int num_atoms) {
  std::uniform_int_distribution<int> var(0, num_vars - 1);
  std::uniform_int_distribution<int> count(0, max_partners);
  std::uniform_int_distribution<int> quarter(0, 3);
  std::uniform_int_distribution<int> rel(0, 5);
  OhConjunction c{num_vars, {}, {}};
  for (int i = 0; i < num_clauses; ++i) {
    int x = var(rng);
    std::vector<int> ys;
    for (int k = count(rng); k > 0; --k) ys.push_back(var(rng));
    std::optional<int> z;
    if (quarter(rng) != 0) z = var(rng);
    c.clauses.push_back(make_oh_clause(x, std::move(ys), z));
  }
  for (int i = 0; i < num_atoms; ++i)
    c.atoms.push_back({var(rng), static_cast<Rel>(rel(rng)), var(rng)});
  return c;
}

Cnf3 random_cnf3(Rng& rng, int n, int m) {
  std::uniform_int_distribution<int> var(1, n);
  std::bernoulli_distribution neg(0.5);
  Cnf3 c{n, {}};
  for (int j = 0; j < m; ++j) {
    std::array<int, 3> cl{};
    for (int& l : cl) l = neg(rng) ? -var(rng) : var(rng);
    c.clauses.push_back(cl);
  }
  return c;
}

}  // namespace tqcsp
