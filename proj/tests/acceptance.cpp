// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tqcsp/classifier.hpp"
#include "tqcsp/errors.hpp"
#include "tqcsp/game.hpp"
#include "tqcsp/generators.hpp"
#include "tqcsp/normalize.hpp"
#include "tqcsp/oh_sat.hpp"
#include "tqcsp/parser.hpp"
#include "tqcsp/proof_system.hpp"
#include "tqcsp/reductions.hpp"
#include "tqcsp/solver.hpp"

using namespace tqcsp;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void run(int id, double budget_s, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = out.ok && secs < budget_s;
  failures += !ok;
  std::printf("%s criterion %d: %s [%.2fs, limit %.0fs]\n", ok ? "PASS" : "FAIL", id,
              out.detail.c_str(), secs, budget_s);
  std::fflush(stdout);
}

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

OhInstance algo_comp() { return normalize(parse_instance(kAlgoComp)); }

VarSet set_of(int n, std::initializer_list<int> members) {
  VarSet s(n);
  for (int m : members) s.set(m);
  return s;
}

Outcome worked_example() {
  OhInstance inst = algo_comp();
  Verdict v = solve(inst);
  std::vector<OhClause> fresh;
  for (const auto& e : v.log)
    if (e.fresh) fresh.push_back(v.clauses[e.clause]);
  bool log_ok = fresh.size() == 2 && fresh[0] == make_oh_clause(0, {1}, 2) &&
                fresh[1] == make_oh_clause(0, {}, 3) && v.rejecting_clause &&
                v.clauses[*v.rejecting_clause] == make_oh_clause(0, {}, 3);
  FactBase fb = saturate(inst);
  bool via13 = false, via14 = false;
  for (int id : fb.bottom_chain()) {
    const Fact& f = fb.facts()[id];
    via13 = via13 || (f.x == 0 && f.z == 2 && f.A == set_of(5, {1}));
    via14 = via14 || (f.x == 0 && f.z == 3 && f.A.none());
  }
  bool ok = !v.value && log_ok && fb.status() == SaturationStatus::Bottom && via13 && via14;
  std::ostringstream d;
  d << "solve=" << (v.value ? "true" : "false") << ", derivations " << fresh.size()
    << (log_ok ? " as expected" : " unexpected") << ", bottom chain via P(x1,x3;{x2}) "
    << (via13 ? "yes" : "no") << " and P(x1,x4;{}) " << (via14 ? "yes" : "no");
  return {ok, d.str()};
}

Outcome oracle_equivalence() {
  long small = 0, bad = 0;
  for_each_small_mplus(4, 3, [&](const OhInstance& inst) {
    ++small;
    bad += solve(inst).value != brute_solve(inst.to_general()).value;
    return true;
  });
  Rng rng(kDefaultSeed);
  std::uniform_int_distribution<int> nv(1, 7), nc(1, 8);
  int random = 1000;
  for (int i = 0; i < random; ++i) {
    OhInstance inst = random_mplus(rng, nv(rng), nc(rng));
    bad += solve(inst).value != brute_solve(inst.to_general()).value;
  }
  return {bad == 0, std::to_string(small) + " exhaustive + " + std::to_string(random) +
                        " random instances, " + std::to_string(bad) + " disagreements"};
}

Outcome oh_sat_completeness() {
  OhInstance base = algo_comp();
  std::vector<Atom> atoms;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      if (a == b) continue;
      atoms.push_back({a, Rel::Lt, b});
      if (a < b) {
        atoms.push_back({a, Rel::Eq, b});
        atoms.push_back({a, Rel::Ne, b});
      }
    }
  auto weak_orders = enumerate_weak_orders(5);
  long checked = 0, bad = 0;
  auto check = [&](const OhConjunction& c) {
    QfFormula f = oracle::formula_of(c);
    bool brute = false;
    for (const WeakOrder& w : weak_orders)
      if ((brute = eval_qf(f, w))) break;
    OhResult r = oh_sat(c);
    ++checked;
    bad += r.sat != brute || (r.sat && (!r.model || !eval_qf(f, *r.model)));
  };
  // The five-variable matrix with every set of at most three test atoms.
  const int k = static_cast<int>(atoms.size());
  check(OhConjunction{5, base.clauses, {}});
  for (int a = 0; a < k; ++a) {
    check(OhConjunction{5, base.clauses, {atoms[a]}});
    for (int b = a + 1; b < k; ++b) {
      check(OhConjunction{5, base.clauses, {atoms[a], atoms[b]}});
      for (int c = b + 1; c < k; ++c) check(OhConjunction{5, base.clauses, {atoms[a], atoms[b], atoms[c]}});
    }
  }
  long family = checked;
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 10000; ++i) check(random_oh_conjunction(rng, 2 + i % 4, 1 + i % 6, 3, i % 4));
  return {bad == 0, std::to_string(family) + " family + " + std::to_string(checked - family) +
                        " random conjunctions, " + std::to_string(bad) + " disagreements"};
}

struct Coupling {
  int instances = 0, completed = 0, bottoms = 0, uncovered = 0, bottom_true = 0;
  int played = 0, lost = 0, undefined = 0;
};

Coupling coupling_run() {
  Coupling c;
  Rng rng(kDefaultSeed + 4);
  std::uniform_int_distribution<int> nv(2, 6), nc(1, 8);
  SaturateOptions so;
  so.cap = 100'000;
  so.stop_at_bottom = false;
  SolveOptions full;
  full.stop_on_reject = false;
  for (; c.instances < 200; ++c.instances) {
    OhInstance inst = random_mplus(rng, nv(rng), nc(rng));
    FactBase fb = saturate(inst, so);
    if (fb.status() == SaturationStatus::CapExceeded) continue;
    ++c.completed;
    c.uncovered += !check_cover(inst, fb, solve(inst, full));
    if (fb.bottom()) {
      ++c.bottoms;
      c.bottom_true += solve(inst).value;
      continue;
    }
    ++c.played;
    try {
      PlayResult p = play_against(inst.to_general(), [&](const WeakOrder& w, int x) {
        return ep_move(inst, fb, w, x);
      });
      c.lost += !p.win;
    } catch (const StrategyUndefined&) {
      ++c.undefined;
    }
  }
  return c;
}

Outcome proof_coupling(const Coupling& c) {
  std::ostringstream d;
  d << c.completed << "/" << c.instances << " saturated, " << c.bottoms << " with bottom, "
    << c.uncovered << " uncovered, " << c.bottom_true << " bottom but solver true";
  return {c.completed > 0 && c.uncovered == 0 && c.bottom_true == 0, d.str()};
}

Outcome tournament(const Coupling& c) {
  std::ostringstream d;
  d << c.played << " plays of the derived strategy, " << c.lost << " lost, " << c.undefined
    << " undefined";
  return {c.played > 0 && c.lost == 0 && c.undefined == 0, d.str()};
}

int index_of(const Prefix& p, const std::string& name) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i].name == name) return i;
  throw Error("no variable " + name);
}

Outcome exponential_contrast() {
  std::ostringstream d;
  bool ok = true;
  d << "endpoint facts";
  for (int n = 2; n <= 8; ++n) {
    OhInstance inst = chain_instance(n);
    FactBase fb = saturate(inst);
    std::size_t count =
        fb.minimal_sets(index_of(inst.prefix, "c0"), index_of(inst.prefix, "c" + std::to_string(n))).size();
    ok = ok && count == (std::size_t{1} << n) && !fb.bottom();
    d << ' ' << count;
  }
  std::vector<double> xs, ys;
  for (int n = 5; n <= 40; n += 5) {
    OhInstance inst = chain_instance(n);
    Verdict v = solve(inst);
    long nv = inst.num_vars();
    ok = ok && v.num_derived() <= nv * nv * (nv + 1);
    xs.push_back(std::log(static_cast<double>(nv)));
    ys.push_back(std::log(static_cast<double>(v.oracle_calls)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  double slope = num / den;
  ok = ok && slope <= 3.5;
  char buf[64];
  std::snprintf(buf, sizeof buf, "; oracle-call exponent %.2f", slope);
  d << buf;
  return {ok, d.str()};
}

Outcome reduction_round_trip() {
  long checked = 0, bad = 0;
  for (int n = 1; n <= 2; ++n) {
    // Clauses as sorted literal triples, formulas as sorted clause lists.
    std::vector<int> lits;
    for (int v = 1; v <= n; ++v) lits.insert(lits.end(), {-v, v});
    std::vector<std::array<int, 3>> clauses;
    for (std::size_t a = 0; a < lits.size(); ++a)
      for (std::size_t b = a; b < lits.size(); ++b)
        for (std::size_t c = b; c < lits.size(); ++c) clauses.push_back({lits[a], lits[b], lits[c]});
    auto test = [&](const Cnf3& psi) {
      ++checked;
      bad += brute_solve(reduce_3cnf_complement(psi)).value == oracle::cnf_sat(psi);
    };
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      test(Cnf3{n, {clauses[i]}});
      for (std::size_t j = i; j < clauses.size(); ++j) test(Cnf3{n, {clauses[i], clauses[j]}});
    }
  }
  return {bad == 0, std::to_string(checked) + " formulas, " + std::to_string(bad) + " disagreements"};
}

bool witnesses_valid(const ClassReport& r) {
  for (const ClassWitness& w : r.witnesses) {
    const QfFormula& f = catalogue(w.relation).defn;
    if (!eval_qf(f, w.t1) || !eval_qf(f, w.t2) || eval_qf(f, apply_op(w.op, w.t1, w.t2))) return false;
  }
  return true;
}

Outcome classifier_truths() {
  std::ostringstream d;
  bool ok = true;
  ClassReport mp = classify({catalogue("M+")});
  ok = ok && mp.pp_preserved && mp.oh_semantic && mp.verdict == "P";
  ClassReport mm = classify({catalogue("M-")});
  ok = ok && mm.dual_pp_preserved && mm.oh_semantic && mm.verdict == "P";
  for (const char* name : {"SM", "D"}) {
    ClassReport r = classify({catalogue(name)});
    int pp = 0, dual = 0;
    for (const auto& w : r.witnesses) {
      pp += w.op == SymbolicOp::pp;
      dual += w.op == SymbolicOp::dual_pp;
    }
    bool fine = !r.pp_preserved && !r.dual_pp_preserved && pp == 1 && dual == 1 && witnesses_valid(r) &&
                r.verdict == "coNP-hard-unless-GOH-definable";
    ok = ok && fine;
    d << name << ' ' << (fine ? "ok" : "wrong") << ", ";
  }
  ClassReport le = classify({TemporalRelation{"le", 2, QfFormula{2, {{{0, Rel::Le, 1}}}}}});
  ok = ok && le.goh_syntactic && le.verdict == "P" && le.via == "GOH-parse";
  d << "M+ " << mp.verdict << " via " << mp.via << ", M- " << mm.verdict << " via " << mm.via
    << ", (x<=y) " << le.verdict << " via " << le.via;
  return {ok, d.str()};
}

Outcome definability() {
  std::string detail;
  bool ok = true;
  for (int k = 1; k <= 4; ++k) {
    bool same = defines(pp_def_mplus(k), mu(k));
    ok = ok && same;
    detail += "k=" + std::to_string(k) + (same ? " equal" : " differs") + (k < 4 ? ", " : "");
  }
  return {ok, detail};
}

Outcome gadgets() {
  std::string detail;
  bool ok = true;
  std::vector<std::pair<const char*, GadgetKind>> items = {
      {"1 (<=)", GadgetKind::LeFromMplus},   {"1 (!=)", GadgetKind::NeFromMplus},
      {"1 (<)", GadgetKind::LtFromMplus},    {"3", GadgetKind::DisFromSepStrict},
      {"4", GadgetKind::DisFromDualStrict},  {"5", GadgetKind::ZFromSepDis}};
  for (const auto& [label, kind] : items) {
    bool pass = check_gadget(short_tool_gadget(kind));
    ok = ok && pass;
    detail += std::string("item ") + label + (pass ? " ok, " : " failed, ");
  }
  std::vector<WeakOrder> expect;
  for (const WeakOrder& w : enumerate_weak_orders(4)) {
    const auto& l = w.level;  // x1, y1, x2, y2
    if ((l[1] != l[0] || l[3] != l[2]) && l[0] < l[2]) expect.push_back(w);
  }
  bool exact = gadget_relation(short_tool_gadget(GadgetKind::ZFromSepDis)) == expect;
  ok = ok && exact;
  detail += std::string("item 5 relation ") + (exact ? "exact" : "differs");
  return {ok, detail};
}

}  // namespace

int main() {
  run(1, 1, worked_example);
  run(2, 600, oracle_equivalence);
  run(3, 300, oh_sat_completeness);
  // Criterion 5 reuses the instances and fact bases of criterion 4.
  Coupling c;
  run(4, 600, [&] {
    c = coupling_run();
    return proof_coupling(c);
  });
  run(5, 600, [&] { return tournament(c); });
  run(6, 300, exponential_contrast);
  run(7, 900, reduction_round_trip);
  run(8, 60, classifier_truths);
  run(9, 120, definability);
  run(10, 120, gadgets);
  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
