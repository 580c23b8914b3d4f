#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tqcsp/catalogue.hpp"
#include "tqcsp/errors.hpp"
#include "tqcsp/normalize.hpp"
#include "tqcsp/order.hpp"
#include "tqcsp/parser.hpp"

using namespace tqcsp;

namespace {

const char* kAlgoComp = R"(qcsp v1
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
)";

QcspInstance random_instance(std::mt19937& rng) {
  std::uniform_int_distribution<int> nvars(1, 6), coin(0, 1), rel(0, 5), len(1, 3);
  QcspInstance inst;
  int n = nvars(rng);
  for (int i = 0; i < n; ++i)
    inst.prefix.push_back({"v" + std::to_string(i), coin(rng) ? Quantifier::Forall : Quantifier::Exists});
  std::uniform_int_distribution<int> var(0, n - 1);
  const char* names[] = {"M+", "D", "Dis", "GSN", "NAE3"};
  std::uniform_int_distribution<int> pick(0, 4);
  for (int c = len(rng) + 1; c > 0; --c) {
    Constraint con;
    for (int d = len(rng); d > 0; --d) {
      if (coin(rng)) {
        con.disjuncts.push_back(Atom{var(rng), static_cast<Rel>(rel(rng)), var(rng)});
      } else {
        auto r = catalogue(names[pick(rng)]);
        RelationUse use{r.name, {}};
        for (int i = 0; i < r.arity; ++i) use.args.push_back(var(rng));
        con.disjuncts.push_back(use);
      }
    }
    inst.matrix.push_back(con);
  }
  return inst;
}

}  // namespace

TEST_CASE("parse M+ x x x gives the unit x >= x") {
  auto inst = parse_instance("qcsp v1\nE x\nC M+ x x x\n");
  CHECK(inst.num_vars() == 1);
  auto oh = normalize(inst);
  REQUIRE(oh.clauses.size() == 1);
  CHECK(oh.clauses[0] == make_oh_clause(0, {}, 0));
}

TEST_CASE("parse the five-variable example") {
  auto inst = parse_instance(kAlgoComp);
  CHECK(inst.num_vars() == 5);
  CHECK(inst.matrix.size() == 5);
  CHECK(inst.is_universal(1));
  CHECK(inst.is_universal(3));
  CHECK_FALSE(inst.is_universal(4));
  CHECK(print_instance(inst) == kAlgoComp);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_instance("qcsp v1\nE x1\nE x2\nC x1 >> x2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 6);
  }
  CHECK_THROWS_AS(parse_instance("qcsp v1\nE x\nC x <= y\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("qcsp v1\nE x\nE y\nC M+ x y\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("E x\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("qcsp v1\nE x\nE x\n"), ParseError);
}

TEST_CASE("printing an empty matrix gives header and prefix only") {
  QcspInstance inst{{{"a", Quantifier::Exists}, {"b", Quantifier::Forall}}, {}};
  CHECK(print_instance(inst) == "qcsp v1\nE a\nA b\n");
}

TEST_CASE("print then parse is the identity on random instances") {
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    QcspInstance inst = random_instance(rng);
    CHECK(parse_instance(print_instance(inst)) == inst);
  }
}

TEST_CASE("relation files round-trip") {
  auto r = parse_relation("rel v1\nname M+\narity 3\nC x1 != x2 | x1 >= x3\n");
  CHECK(r.arity == 3);
  CHECK(r.defn == catalogue("M+").defn);
  CHECK(parse_relation(print_relation(r)).defn == r.defn);
}

TEST_CASE("normalize rewrites equality and pivots clauses") {
  auto eq = normalize(parse_instance("qcsp v1\nE x\nE y\nC x = y\n"));
  REQUIRE(eq.clauses.size() == 2);
  CHECK(eq.clauses[0] == make_oh_clause(0, {}, 1));
  CHECK(eq.clauses[1] == make_oh_clause(1, {}, 0));

  auto m = normalize(parse_instance("qcsp v1\nE x\nE y\nE z\nC x != y | x >= z\n"));
  REQUIRE(m.clauses.size() == 1);
  CHECK(m.clauses[0] == make_oh_clause(0, {1}, 2));

  CHECK_THROWS_AS(normalize(parse_instance("qcsp v1\nE a\nE b\nE c\nE d\nC a != b | c >= d\n")),
                  NotPivoted);
}

TEST_CASE("normalize is idempotent and keeps the game value") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> nvars(2, 5), coin(0, 1), rel(0, 5);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    QcspInstance inst;
    int n = nvars(rng);
    std::uniform_int_distribution<int> var(0, n - 1);
    for (int v = 0; v < n; ++v)
      inst.prefix.push_back({"v" + std::to_string(v), coin(rng) ? Quantifier::Forall : Quantifier::Exists});
    for (int c = 0; c < 3; ++c) {
      int x = var(rng);
      Constraint con;
      con.disjuncts.push_back(Atom{x, Rel::Ne, var(rng)});
      con.disjuncts.push_back(Atom{x, static_cast<Rel>(rel(rng)), var(rng)});
      inst.matrix.push_back(con);
    }
    OhInstance oh;
    try {
      oh = normalize(inst);
    } catch (const NotPivoted&) {
      continue;
    }
    ++checked;
    CHECK(normalize(oh) == oh);
    CHECK(oracle::game(oh.to_general()) == oracle::game(inst));
  }
  CHECK(checked > 100);
}

TEST_CASE("catalogue rows") {
  auto gsn = catalogue("GSN");
  CHECK(gsn.arity == 4);
  CHECK(gsn.defn.clauses.size() == 7);
  auto z = catalogue("Z");
  CHECK(z.defn.clauses[1] == Clause{{1, Rel::Lt, 3}});
  auto nae = catalogue("NAE3");
  CHECK(nae.defn.clauses == std::vector<Clause>{{{0, Rel::Ne, 1}, {0, Rel::Ne, 2}}});
  CHECK(catalogue_names().size() == 20);
  for (const auto& name : catalogue_names()) CHECK(catalogue(name).arity >= 2);
  CHECK_THROWS_AS(catalogue("nope"), Error);
}

TEST_CASE("reversed flips every order atom") {
  Atom a{0, Rel::Lt, 1};
  CHECK(reversed(a) == Atom{0, Rel::Gt, 1});
  CHECK(reversed(reversed(catalogue("M+")).defn) == catalogue("M+").defn);
}

TEST_CASE("the minus rows are the reversed plus rows") {
  CHECK(same_relation(reversed(catalogue("M+")).defn, catalogue("M-").defn));
  CHECK(same_relation(reversed(catalogue("M<+")).defn, catalogue("M<-").defn));
  CHECK(same_relation(reversed(catalogue("GM+")).defn, catalogue("GM-").defn));
}
