#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tqcsp/errors.hpp"
#include "tqcsp/generators.hpp"
#include "tqcsp/normalize.hpp"
#include "tqcsp/parser.hpp"
#include "tqcsp/solver.hpp"

using namespace tqcsp;

namespace {

OhInstance algo_comp() {
  return normalize(parse_instance(R"(qcsp v1
E x1
A x2
E x3
A x4
E x5
C M+ x1 x2 x5
C M+ x3 x2 x4
C M+ x5 x4 x3
C x3 >= x1
C x5 >= x1
)"));
}

OhInstance from_text(const char* text) { return normalize(parse_instance(text)); }

}  // namespace

TEST_CASE("up sets and cuts on the five-variable example") {
  OhInstance inst = algo_comp();
  CHECK(up_set(1, inst) == std::vector<int>{1, 3});
  CHECK(up_set(4, inst).empty());
  CHECK(up_set(0, inst) == std::vector<int>{1, 3});
  auto c13 = cut(0, 2, inst);
  CHECK(std::find(c13.begin(), c13.end(), 3) != c13.end());
  auto c14 = cut(0, 3, inst);
  CHECK(std::find(c14.begin(), c14.end(), 1) != c14.end());
  // Both endpoints universal: every universal except z.
  CHECK(cut(1, 3, inst) == std::vector<int>{1});
}

TEST_CASE("solve rejects the five-variable example after two derivations") {
  OhInstance inst = algo_comp();
  Verdict v = solve(inst);
  CHECK_FALSE(v.value);
  std::vector<OhClause> fresh;
  for (const auto& e : v.log)
    if (e.fresh) fresh.push_back(v.clauses[e.clause]);
  REQUIRE(fresh.size() == 2);
  CHECK(fresh[0] == make_oh_clause(0, {1}, 2));
  CHECK(fresh[1] == make_oh_clause(0, {}, 3));
  REQUIRE(v.rejecting_clause);
  CHECK(v.clauses[*v.rejecting_clause] == make_oh_clause(0, {}, 3));
  CHECK(replay_certificate(inst, v));
}

TEST_CASE("solve on one-line instances") {
  CHECK(solve(from_text("qcsp v1\nE x\nC M+ x x x\n")).value);
  CHECK_FALSE(solve(from_text("qcsp v1\nE x\nA y\nC M+ y y x\n")).value);
  CHECK(solve(from_text("qcsp v1\nA y\nE x\nC M+ x y y\n")).value);
  OhInstance general{{{"x", Quantifier::Exists}, {"a", Quantifier::Exists}, {"b", Quantifier::Exists}},
                     {make_oh_clause(0, {1, 2}, 0)}};
  CHECK_THROWS_AS(solve(general), DialectError);
}

TEST_CASE("solve agrees with the reference game on random instances") {
  Rng rng(101);
  for (int i = 0; i < 400; ++i) {
    OhInstance inst = random_mplus(rng, 2 + i % 5, 1 + i % 6);
    Verdict v = solve(inst);
    CHECK(v.value == oracle::game(inst.to_general()));
    CHECK(replay_certificate(inst, v));
  }
}

TEST_CASE("derived clauses are entailed and the clause bound holds") {
  Rng rng(202);
  for (int i = 0; i < 150; ++i) {
    OhInstance inst = random_mplus(rng, 3 + i % 3, 2 + i % 4);
    SolveOptions opts;
    opts.stop_on_reject = false;
    Verdict v = solve(inst, opts);
    int n = inst.num_vars();
    CHECK(v.num_derived() <= n * n * (n + 1));
    bool truth = oracle::game(inst.to_general());
    for (int k = v.num_matrix; k < static_cast<int>(v.clauses.size()); ++k) {
      OhInstance more = inst;
      more.clauses.push_back(v.clauses[k]);
      CHECK(oracle::game(more.to_general()) == truth);
    }
  }
}

TEST_CASE("reusing oracle answers does not change the result") {
  Rng rng(303);
  for (int i = 0; i < 200; ++i) {
    OhInstance inst = random_mplus(rng, 3 + i % 4, 2 + i % 5);
    SolveOptions plain;
    plain.reuse_answers = false;
    Verdict a = solve(inst), b = solve(inst, plain);
    CHECK(a.value == b.value);
    CHECK(a.clauses == b.clauses);
    CHECK(a.oracle_calls <= b.oracle_calls);
  }
}

TEST_CASE("compilation to M+ triples") {
  OhInstance one = from_text("qcsp v1\nE x\nA y\nE z\nC x != y | x >= z\n");
  CHECK(compile_to_mplus(one) == one);

  OhInstance two{{{"x", Quantifier::Exists}, {"y1", Quantifier::Forall}, {"y2", Quantifier::Forall},
                  {"z", Quantifier::Exists}},
                 {make_oh_clause(0, {1, 2}, 3)}};
  OhInstance c = compile_to_mplus(two);
  REQUIRE(c.num_vars() == 5);
  CHECK(c.prefix[4].quantifier == Quantifier::Exists);
  std::vector<OhClause> expect{make_oh_clause(0, {1}, 4), make_oh_clause(4, {}, 0),
                               make_oh_clause(4, {2}, 3)};
  CHECK(c.clauses == expect);
  CHECK(is_pure_mplus(c));
}

TEST_CASE("compiled targetless clauses keep the game value") {
  Rng rng(404);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 50; ++i) {
    int n = 3 + i % 3;
    std::uniform_int_distribution<int> var(0, n - 1);
    OhInstance inst = random_mplus(rng, n, 1 + i % 2);
    int x = var(rng), y1 = var(rng), y2 = var(rng);
    inst.clauses.push_back(make_oh_clause(x, {y1, y2}, std::nullopt));
    if (coin(rng)) inst.clauses.push_back(make_oh_clause(var(rng), {var(rng), var(rng)}, var(rng)));
    OhInstance c = compile_to_mplus(inst);
    CHECK(is_pure_mplus(c));
    CHECK(oracle::game(c.to_general()) == oracle::game(inst.to_general()));
    CHECK(solve(c).value == oracle::game(inst.to_general()));
  }
}
