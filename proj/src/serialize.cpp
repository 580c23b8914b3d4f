#include "tqcsp/serialize.hpp"

#include <sstream>

namespace tqcsp {

using nlohmann::json;

json to_json(const Verdict& v) {
  json derived = json::array();
  for (std::size_t i = v.num_matrix; i < v.clauses.size(); ++i)
    derived.push_back(format_clause(v.clauses[i], v.prefix));
  json rejecting = nullptr;
  if (v.rejecting_clause) rejecting = format_clause(v.clauses[*v.rejecting_clause], v.prefix);
  return {{"verdict", v.value},
          {"derived", std::move(derived)},
          {"rejecting_clause", std::move(rejecting)},
          {"oracle_calls", v.oracle_calls}};
}

json to_json(const WeakOrder& w) {
  json zero = nullptr;
  if (w.zero) zero = *w.zero;
  return {{"levels", w.level}, {"zero", std::move(zero)}};
}

json to_json(const ClassReport& r) {
  json witnesses = json::array();
  for (const ClassWitness& w : r.witnesses)
    witnesses.push_back({{"relation", w.relation},
                         {"op", to_string(w.op)},
                         {"t1", to_json(w.t1)},
                         {"t2", to_json(w.t2)}});
  return {{"flags",
           {{"oh_semantic", r.oh_semantic},
            {"oh_syntactic", r.oh_syntactic},
            {"pp_preserved", r.pp_preserved},
            {"dual_pp_preserved", r.dual_pp_preserved},
            {"ppsynt_shape", r.ppsynt_shape},
            {"goh_syntactic", r.goh_syntactic}}},
          {"witnesses", std::move(witnesses)},
          {"verdict", r.verdict},
          {"via", r.via.empty() ? json(nullptr) : json(r.via)}};
}

const char* to_string(SaturationStatus s) {
  switch (s) {
    case SaturationStatus::Fixpoint: return "fixpoint";
    case SaturationStatus::Bottom: return "bottom";
    case SaturationStatus::CapExceeded: return "cap-exceeded";
  }
  return "?";
}

json to_json(const FactBase& fb, const Prefix& prefix) {
  json facts = json::array();
  std::istringstream lines(fb.dump(prefix));
  for (std::string line; std::getline(lines, line);) facts.push_back(line);
  json chain = json::array();
  for (int id : fb.bottom_chain())
    chain.push_back({{"fact", fb.format_fact(id, prefix)},
                     {"rule", to_string(fb.facts()[id].rule)}});
  return {{"status", to_string(fb.status())},
          {"facts", std::move(facts)},
          {"bottom_chain", std::move(chain)}};
}

json to_json(const PlayResult& p, const QcspInstance& inst) {
  json out = {{"win", p.win}, {"plays", p.plays}};
  if (!p.win) {
    json trace = json::array();
    for (const Move& m : p.trace) trace.push_back(to_string(m));
    out["trace"] = std::move(trace);
    out["final_order"] = to_string(p.final_order, names_of(inst.prefix));
    if (p.violated)
      out["violated"] = format_clause(inst.cnf().clauses[*p.violated], names_of(inst.prefix));
  }
  return out;
}

}  // namespace tqcsp
