#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tqcsp/errors.hpp"
#include "tqcsp/game.hpp"
#include "tqcsp/parser.hpp"

using namespace tqcsp;

namespace {

QcspInstance random_general(std::mt19937& rng, int n, int clauses) {
  std::uniform_int_distribution<int> var(0, n - 1), rel(0, 5), len(1, 2), coin(0, 1);
  QcspInstance inst;
  for (int i = 0; i < n; ++i)
    inst.prefix.push_back({"v" + std::to_string(i), coin(rng) ? Quantifier::Forall : Quantifier::Exists});
  for (int c = 0; c < clauses; ++c) {
    Constraint con;
    for (int d = len(rng); d > 0; --d) con.disjuncts.push_back(Atom{var(rng), static_cast<Rel>(rel(rng)), var(rng)});
    inst.matrix.push_back(con);
  }
  return inst;
}

}  // namespace

TEST_CASE("brute_solve examples") {
  CHECK(brute_solve(parse_instance("qcsp v1\nA x\nE y\nC y > x\n")).value);
  CHECK_FALSE(brute_solve(parse_instance("qcsp v1\nE x\nA y\nC M+ y y x\n")).value);
  CHECK_FALSE(brute_solve(parse_instance(R"(qcsp v1
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
)")).value);
  CHECK(brute_solve(parse_instance("qcsp v1\nE x\nE y\nA z\nC x < z | z < y\nC x < y\n")).value);
  CHECK_FALSE(brute_solve(parse_instance("qcsp v1\nE x\nE y\nA z\nC x < z\nC z < y\n")).value);
}

TEST_CASE("limits are enforced") {
  QcspInstance big;
  for (int i = 0; i < 13; ++i) big.prefix.push_back({"v" + std::to_string(i), Quantifier::Exists});
  CHECK_THROWS_AS(brute_solve(big), ResourceLimit);
  // A tautology over the last variable keeps every earlier branch open.
  QcspInstance wide = parse_instance("qcsp v1\nA a\nA b\nA c\nA d\nC a < d | a >= d | b = c\n");
  CHECK(brute_solve(wide).value);
  CHECK_THROWS_AS(brute_solve(wide, GameLimits{12, 3}), ResourceLimit);
}

TEST_CASE("brute_solve agrees with the reference game") {
  std::mt19937 rng(12);
  for (int i = 0; i < 500; ++i) {
    QcspInstance inst = random_general(rng, 1 + i % 5, 1 + i % 4);
    CHECK(brute_solve(inst).value == oracle::game(inst));
  }
}

TEST_CASE("adding a clause never turns false into true") {
  std::mt19937 rng(13);
  for (int i = 0; i < 300; ++i) {
    QcspInstance inst = random_general(rng, 2 + i % 4, 1 + i % 3);
    bool before = brute_solve(inst).value;
    inst.matrix.push_back(random_general(rng, inst.num_vars(), 1).matrix[0]);
    if (!before) CHECK_FALSE(brute_solve(inst).value);
  }
}

TEST_CASE("reversing every order atom keeps the verdict") {
  std::mt19937 rng(14);
  for (int i = 0; i < 300; ++i) {
    QcspInstance inst = random_general(rng, 2 + i % 4, 1 + i % 4);
    CHECK(brute_solve(reversed(inst)).value == brute_solve(inst).value);
  }
}

TEST_CASE("play_against a constant-true matrix wins") {
  QcspInstance inst = parse_instance("qcsp v1\nA y\nE x\nA z\n");
  PlayResult p = play_against(inst, [](const WeakOrder&, int) { return Move{Move::Kind::Gap, 0}; });
  CHECK(p.win);
}

TEST_CASE("play_against a false sentence loses with a trace") {
  QcspInstance inst = parse_instance("qcsp v1\nE x\nA y\nC M+ y y x\n");
  PlayResult p = play_against(inst, [](const WeakOrder& w, int) { return Move{Move::Kind::Gap, w.num_levels()}; });
  CHECK_FALSE(p.win);
  REQUIRE(p.violated);
  CHECK(p.trace.size() == 2);
  CHECK_FALSE(eval_qf(inst.cnf(), p.final_order));
}

TEST_CASE("the brute strategy respects the game value") {
  GameSolver g(parse_instance("qcsp v1\nA x\nE y\nC y > x\n").cnf(), {Quantifier::Forall, Quantifier::Exists});
  CHECK(g.evaluate().value);
  auto s = g.strategy();
  CHECK_FALSE(s.is_null());
  CHECK(s.dump().find("replies") != std::string::npos);

  GameSolver lost(parse_instance("qcsp v1\nE x\nA y\nC y <= x\n").cnf(), {Quantifier::Exists, Quantifier::Forall});
  CHECK_FALSE(lost.evaluate().value);
  CHECK(lost.strategy().is_null());
}

TEST_CASE("evaluation from a fixed initial order") {
  // x and y are placed already, z must sit strictly between them.
  QfFormula f{3, {{{0, Rel::Lt, 2}}, {{2, Rel::Lt, 1}}}};
  GameSolver g(f, {Quantifier::Exists, Quantifier::Exists, Quantifier::Exists});
  CHECK(g.evaluate(WeakOrder{{0, 1}, std::nullopt}).value);
  GameSolver h(f, {Quantifier::Exists, Quantifier::Exists, Quantifier::Exists});
  CHECK_FALSE(h.evaluate(WeakOrder{{0, 0}, std::nullopt}).value);
}
