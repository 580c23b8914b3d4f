#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tqcsp/catalogue.hpp"
#include "tqcsp/errors.hpp"
#include "tqcsp/order.hpp"

using namespace tqcsp;

namespace {

WeakOrder wo(std::vector<int> levels, std::optional<int> zero = std::nullopt) {
  return WeakOrder{std::move(levels), zero};
}

// A realizing assignment with random gaps between levels.
std::vector<double> realize(const WeakOrder& w, std::mt19937& rng) {
  std::uniform_real_distribution<double> gap(0.01, 10.0);
  std::vector<double> at(w.num_levels());
  double v = gap(rng) - 5;
  for (double& x : at) x = (v += gap(rng));
  std::vector<double> out;
  for (int l : w.level) out.push_back(at[l]);
  return out;
}

QfFormula random_oh_formula(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> var(0, n - 1), k(0, 2), count(1, 3), coin(0, 1);
  QfFormula f{n, {}};
  for (int c = count(rng); c > 0; --c) {
    Clause cl;
    for (int i = k(rng); i > 0; --i) cl.push_back({var(rng), Rel::Ne, var(rng)});
    if (coin(rng) || cl.empty()) cl.push_back({var(rng), Rel::Ge, var(rng)});
    f.clauses.push_back(cl);
  }
  return f;
}

}  // namespace

TEST_CASE("eval_qf on small orders") {
  QfFormula ge{2, {{{0, Rel::Ge, 1}}}};
  CHECK(eval_qf(ge, wo({0, 0})));
  const QfFormula& m = catalogue("M+").defn;
  CHECK(eval_qf(m, wo({1, 1, 0})));
  CHECK_FALSE(eval_qf(m, wo({0, 0, 1})));
  CHECK_THROWS_AS(eval_qf(m, wo({0, 0})), Error);
}

TEST_CASE("weak-order counts follow the ordered Bell numbers") {
  CHECK(enumerate_weak_orders(1).size() == 1);
  CHECK(enumerate_weak_orders(2).size() == 3);
  CHECK(enumerate_weak_orders(4).size() == 75);
  for (int n = 0; n <= 7; ++n) {
    auto all = enumerate_weak_orders(n);
    CHECK(static_cast<long>(all.size()) == oracle::ordered_bell(n));
    CHECK(std::set<WeakOrder>(all.begin(), all.end()).size() == all.size());
    CHECK(fubini(n) == static_cast<std::uint64_t>(oracle::ordered_bell(n)));
  }
  CHECK_THROWS_AS(enumerate_weak_orders(kMaxEnumArity + 1), Error);
}

TEST_CASE("zero-marked orders cover every position of zero") {
  long count = 0;
  for_each_zero_marked(3, [&](const WeakOrder& w) {
    CHECK(w.zero.has_value());
    ++count;
    return true;
  });
  CHECK(count == oracle::ordered_bell(4));
}

TEST_CASE("eval_qf agrees with random realizations") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    QfFormula f = random_oh_formula(rng, 4);
    for (const WeakOrder& w : enumerate_weak_orders(4)) {
      bool expect = eval_qf(f, w);
      for (int r = 0; r < 3; ++r) {
        auto values = realize(w, rng);
        CHECK(oracle::holds(f, values) == expect);
        CHECK(order_type(values) == w);
      }
    }
  }
}

TEST_CASE("sat_exists extends a bound order") {
  // h is variable 2 and must sit at or above both x and y.
  QfFormula f{3, {{{2, Rel::Ge, 0}}, {{2, Rel::Ge, 1}}}};
  auto ext = sat_exists(f, wo({0, 1}));
  REQUIRE(ext);
  CHECK(ext->value(2) >= ext->value(1));
  CHECK(ext->value(0) < ext->value(1));

  QfFormula bad{2, {{{1, Rel::Gt, 0}}, {{1, Rel::Lt, 0}}}};
  CHECK_FALSE(sat_exists(bad, wo({0})));
}

TEST_CASE("pp keeps non-positive inputs in their order") {
  for_each_zero_marked(3, [&](const WeakOrder& t1) {
    bool all_low = true;
    for (int p = 0; p < 3; ++p) all_low = all_low && t1.value(p) <= t1.value(kZero);
    if (!all_low) return true;
    for (const WeakOrder& t2 : enumerate_weak_orders(3))
      CHECK(apply_op(SymbolicOp::pp, t1, t2) == canonical(WeakOrder{t1.level, std::nullopt}));
    return true;
  });
}

TEST_CASE("pp on the SM witness pair") {
  // x1 = x2 = 0 < x3 = x4 and t2 = (1, 2, 0, 5).
  WeakOrder t1 = wo({0, 0, 1, 1}, 0);
  WeakOrder t2 = order_type({1, 2, 0, 5});
  WeakOrder out = apply_op(SymbolicOp::pp, t1, t2);
  CHECK(out.level[0] == out.level[1]);
  CHECK(out.level[2] < out.level[3]);
  CHECK(out.level[1] < out.level[2]);
  CHECK_THROWS_AS(apply_op(SymbolicOp::pp, wo({0, 0, 1, 1}), t2), Error);
}

TEST_CASE("pp never lifts a non-positive source above a positive one") {
  for_each_zero_marked(3, [&](const WeakOrder& t1) {
    for (const WeakOrder& t2 : enumerate_weak_orders(3)) {
      WeakOrder out = apply_op(SymbolicOp::pp, t1, t2);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          if (t1.value(a) <= t1.value(kZero) && t1.value(b) > t1.value(kZero))
            CHECK(out.level[a] < out.level[b]);
    }
    return true;
  });
}

TEST_CASE("lex is injective and ordered by the first argument") {
  auto all = enumerate_weak_orders(3);
  for (const auto& t1 : all)
    for (const auto& t2 : all) {
      WeakOrder out = apply_op(SymbolicOp::lex, t1, t2);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          bool same = t1.level[a] == t1.level[b] && t2.level[a] == t2.level[b];
          CHECK((out.level[a] == out.level[b]) == same);
          if (t1.level[a] < t1.level[b]) CHECK(out.level[a] < out.level[b]);
        }
    }
}

TEST_CASE("ll and dual ll preserve Ord-Horn formulas") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 3;
    QfFormula f = random_oh_formula(rng, n);
    std::vector<WeakOrder> first, second;
    for_each_zero_marked(n, [&](const WeakOrder& w) {
      if (eval_qf(f, w)) first.push_back(w);
      return true;
    });
    for (const WeakOrder& w : enumerate_weak_orders(n))
      if (eval_qf(f, w)) second.push_back(w);
    for (const auto& a : first)
      for (const auto& b : second) {
        CHECK(eval_qf(f, apply_op(SymbolicOp::ll, a, b)));
        CHECK(eval_qf(f, apply_op(SymbolicOp::dual_ll, a, b)));
      }
  }
}

TEST_CASE("moves list levels before gaps") {
  auto ms = moves(2);
  REQUIRE(ms.size() == 5);
  CHECK(ms[0] == Move{Move::Kind::Level, 0});
  CHECK(ms[1] == Move{Move::Kind::Level, 1});
  CHECK(ms[2] == Move{Move::Kind::Gap, 0});
  WeakOrder w = wo({0, 1});
  place(w, Move{Move::Kind::Gap, 1});
  CHECK(w == wo({0, 2, 1}));
}
