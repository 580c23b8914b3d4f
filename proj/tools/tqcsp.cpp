// Command-line front end: solve, brute, derive, classify, compile,
// reduce-3cnf, verify-strategy and selftest.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "tqcsp/classifier.hpp"
#include "tqcsp/errors.hpp"
#include "tqcsp/game.hpp"
#include "tqcsp/generators.hpp"
#include "tqcsp/normalize.hpp"
#include "tqcsp/parser.hpp"
#include "tqcsp/proof_system.hpp"
#include "tqcsp/reductions.hpp"
#include "tqcsp/serialize.hpp"
#include "tqcsp/solver.hpp"

namespace {

using namespace tqcsp;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kInput = 3, kLimit = 4 };

struct RunConfig {
  std::string input;
  std::vector<std::string> inputs;
  std::string output;
  int max_vars = GameLimits{}.max_vars;
  std::uint64_t max_nodes = GameLimits{}.max_nodes;
  std::size_t fact_cap = SaturateOptions{}.cap;
  std::uint64_t seed = kDefaultSeed;
  bool emit_strategy = false;
  bool json = false;
  bool quiet = false;
  bool reverse_order = false;
};

QcspInstance load_instance(const RunConfig& cfg) {
  QcspInstance inst = parse_instance(read_file(cfg.input));
  return cfg.reverse_order ? reversed(inst) : inst;
}

// Pure M+ form of the instance, compiling general OH clauses if needed.
OhInstance load_mplus(const RunConfig& cfg) {
  OhInstance oh = normalize(load_instance(cfg));
  return is_pure_mplus(oh) ? oh : compile_to_mplus(oh);
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw Error("cannot write " + cfg.output);
  out << text;
}

void print(const RunConfig& cfg, const nlohmann::json& j, const std::string& plain) {
  if (cfg.json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << plain << '\n';
}

int cmd_solve(const RunConfig& cfg) {
  Verdict v = solve_general(load_instance(cfg));
  print(cfg, to_json(v), v.value ? "true" : "false");
  if (!cfg.quiet && !cfg.json)
    std::cerr << v.num_derived() << " derived clauses, " << v.oracle_calls << " oracle calls\n";
  return kOk;
}

int cmd_brute(const RunConfig& cfg) {
  QcspInstance inst = load_instance(cfg);
  if (inst.num_vars() > cfg.max_vars)
    throw ResourceLimit(std::to_string(inst.num_vars()) + " variables exceed --max-vars " +
                        std::to_string(cfg.max_vars));
  GameSolver g(inst.cnf(), quantifiers(inst.prefix), GameLimits{cfg.max_vars, cfg.max_nodes});
  GameVerdict v = g.evaluate();
  nlohmann::json j = {{"verdict", v.value}, {"nodes", v.nodes}, {"memo_entries", v.memo_entries}};
  if (cfg.emit_strategy) j["strategy"] = g.strategy();
  if (cfg.json) {
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << (v.value ? "true" : "false") << '\n';
  if (cfg.emit_strategy) std::cout << j["strategy"].dump(2) << '\n';
  if (!cfg.quiet) std::cerr << v.nodes << " nodes expanded\n";
  return kOk;
}

int cmd_derive(const RunConfig& cfg) {
  OhInstance inst = load_mplus(cfg);
  SaturateOptions opts;
  opts.cap = cfg.fact_cap;
  FactBase fb = saturate(inst, opts);
  if (fb.status() == SaturationStatus::CapExceeded)
    throw ResourceLimit("fact cap " + std::to_string(cfg.fact_cap) + " exceeded");
  if (cfg.json) {
    std::cout << to_json(fb, inst.prefix).dump(2) << '\n';
    return kOk;
  }
  std::cout << to_string(fb.status()) << '\n';
  if (!cfg.quiet) std::cout << fb.dump(inst.prefix);
  return kOk;
}

int cmd_classify(const RunConfig& cfg) {
  std::vector<TemporalRelation> rels;
  for (const std::string& path : cfg.inputs) {
    auto named = find_relation(path);
    rels.push_back(named ? *named : parse_relation(read_file(path)));
    if (cfg.reverse_order) rels.back() = reversed(rels.back());
  }
  ClassReport r = classify(rels);
  print(cfg, to_json(r), r.verdict + (r.via.empty() ? "" : " (" + r.via + ")"));
  return kOk;
}

int cmd_compile(const RunConfig& cfg) {
  write_output(cfg, print_instance(load_mplus(cfg)));
  return kOk;
}

int cmd_reduce(const RunConfig& cfg) {
  write_output(cfg, print_instance(reduce_3cnf_complement(parse_dimacs(read_file(cfg.input)))));
  return kOk;
}

int cmd_verify_strategy(const RunConfig& cfg) {
  OhInstance inst = load_mplus(cfg);
  SaturateOptions opts;
  opts.cap = cfg.fact_cap;
  FactBase fb = saturate(inst, opts);
  if (fb.status() == SaturationStatus::CapExceeded)
    throw ResourceLimit("fact cap " + std::to_string(cfg.fact_cap) + " exceeded");
  if (fb.bottom()) {
    nlohmann::json j = to_json(fb, inst.prefix);
    j["result"] = "bottom";
    print(cfg, j, "bottom derived; the sentence is false");
    return kOk;
  }
  QcspInstance general = inst.to_general();
  PlayResult p = play_against(general, [&](const WeakOrder& w, int x) {
    return ep_move(inst, fb, w, x);
  });
  nlohmann::json j = to_json(p, general);
  j["result"] = p.win ? "win" : "loss";
  print(cfg, j, p.win ? "win (" + std::to_string(p.plays) + " plays)" : "loss");
  return p.win ? kOk : kFailure;
}

// Reduced-size versions of the oracle-equivalence and invariant suites.
int cmd_selftest(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  bool all = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    all = all && ok;
    if (!cfg.quiet || !ok) std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  };

  int agree = 0, runs = 300;
  for (int i = 0; i < runs; ++i) {
    OhInstance inst = random_mplus(rng, 2 + i % 4, 1 + i % 4);
    agree += solve(inst).value == brute_solve(inst.to_general()).value;
  }
  report("solve = brute", agree == runs, std::to_string(agree) + "/" + std::to_string(runs));

  int ok_sat = 0;
  runs = 1000;
  for (int i = 0; i < runs; ++i) {
    OhConjunction c = random_oh_conjunction(rng, 4, 3, 2, 2);
    OhResult r = oh_sat(c);
    QfFormula f{4, {}};
    for (const OhClause& cl : c.clauses) f.clauses.push_back(cl.to_clause());
    for (const Atom& a : c.atoms) f.clauses.push_back({a});
    bool brute = false;
    for_each_weak_order(4, [&](const WeakOrder& w) { return !(brute = eval_qf(f, w)); });
    ok_sat += r.sat == brute && (!r.sat || eval_qf(f, *r.model));
  }
  report("oh_sat = enumeration", ok_sat == runs,
         std::to_string(ok_sat) + "/" + std::to_string(runs));

  int covered = 0;
  runs = 100;
  for (int i = 0; i < runs; ++i) {
    OhInstance inst = random_mplus(rng, 2 + i % 4, 1 + i % 5);
    FactBase fb = saturate(inst);
    SolveOptions so;
    so.stop_on_reject = false;
    Verdict v = solve(inst, so);
    bool ok = fb.status() == SaturationStatus::CapExceeded ||
              (check_cover(inst, fb, v) && (!fb.bottom() || !solve(inst).value));
    covered += ok;
  }
  report("proof-system cover", covered == runs,
         std::to_string(covered) + "/" + std::to_string(runs));

  int reduced = 0;
  runs = 20;
  for (int i = 0; i < runs; ++i) {
    Cnf3 c = random_cnf3(rng, 1 + i % 2, 1 + (i / 2) % 2);
    reduced += brute_solve(reduce_3cnf_complement(c)).value == !satisfiable(c);
  }
  report("reduction = complement of SAT", reduced == runs,
         std::to_string(reduced) + "/" + std::to_string(runs));

  bool mplus = classify({catalogue("M+")}).verdict == "P" &&
               !is_preserved_by(catalogue("SM"), SymbolicOp::pp).preserved;
  report("classifier ground truths", mplus, mplus ? "ok" : "mismatch");
  return all ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantified temporal constraint solver"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_flag("--json", cfg.json, "Print machine-readable JSON");
  app.add_flag("--quiet", cfg.quiet, "Print only the result");
  app.add_flag("--reverse-order", cfg.reverse_order, "Work on the order-reversed input");
  app.add_flag("--emit-strategy", cfg.emit_strategy, "brute: print the winning strategy");
  app.add_option("--max-vars", cfg.max_vars, "brute: variable limit")->check(CLI::PositiveNumber);
  app.add_option("--max-nodes", cfg.max_nodes, "brute: node limit")->check(CLI::PositiveNumber);
  app.add_option("--fact-cap", cfg.fact_cap, "derive: fact limit")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "selftest: random seed");

  std::function<int(const RunConfig&)> run;
  auto with_input = [&](const char* name, const char* help, int (*fn)(const RunConfig&),
                        bool output = false) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("FILE", cfg.input, "Input file")->required();
    if (output) sub->add_option("-o,--output", cfg.output, "Output file (default stdout)");
    sub->callback([&run, fn] { run = fn; });
  };
  with_input("solve", "Decide with the polynomial algorithm", cmd_solve);
  with_input("brute", "Decide by game-tree search", cmd_brute);
  with_input("derive", "Saturate the proof system and dump its facts", cmd_derive);
  with_input("compile", "Rewrite into M+ triples and units", cmd_compile, true);
  with_input("reduce-3cnf", "Build the sentence for a DIMACS 3-CNF", cmd_reduce, true);
  with_input("verify-strategy", "Play the derived strategy against every reply",
             cmd_verify_strategy);
  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify relation files or names");
  classify_cmd->add_option("FILE", cfg.inputs, "Relation files or catalogue names")->required();
  classify_cmd->callback([&] { run = cmd_classify; });
  app.add_subcommand("selftest", "Run reduced oracle-equivalence suites")->callback([&] {
    run = cmd_selftest;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return run(cfg);
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kLimit;
  } catch (const StrategyUndefined& e) {
    std::cerr << "strategy undefined: " << e.what() << '\n';
    return kFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
}
