#pragma once

#include "json.hpp"
#include "tqcsp/classifier.hpp"
#include "tqcsp/game.hpp"
#include "tqcsp/proof_system.hpp"
#include "tqcsp/solver.hpp"

namespace tqcsp {

// {"verdict": bool, "derived": [clause], "rejecting_clause": clause|null,
//  "oracle_calls": int}
nlohmann::json to_json(const Verdict& v);

// {"levels": [..], "zero": level|null}
nlohmann::json to_json(const WeakOrder& w);

nlohmann::json to_json(const ClassReport& r);

// {"status", "facts": [dump lines], "bottom_chain": [fact lines]}
nlohmann::json to_json(const FactBase& fb, const Prefix& prefix);

nlohmann::json to_json(const PlayResult& p, const QcspInstance& inst);

const char* to_string(SaturationStatus s);

}  // namespace tqcsp
