#pragma once

#include <string>

#include "json.hpp"

#include "barrec/choice.hpp"
#include "barrec/compare.hpp"
#include "barrec/games.hpp"
#include "barrec/orders.hpp"
#include "barrec/psi.hpp"
#include "barrec/trace.hpp"

namespace barrec {

// Key order is fixed so identical inputs serialise byte-identically.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// --- output ----------------------------------------------------------------

Json to_json(const TraceEvent& ev);
Json to_json(const std::vector<TraceEvent>& events);
Json to_json(const UpdateSequence& seq);
Json to_json(const ValidationReport& report);
Json to_json(const Solution& s);
Json to_json(const EquationWitness& w);
Json to_json(const RealizationReport& report);
Json to_json(const CompareReport& report);
Json to_json(const PartialSeq& u);

// {"schema":1, "ok":false, "error":{"kind","message",...}} with structured
// extras per error class (cycle path, fuel cap, condition witness).
Json error_json(const Error& e);

int exit_code_for(const Error& e);

// --- config parsing ----------------------------------------------------------

// "bbc" | {"triangle": "...", "prec": "...", "m": "...", ["name": "..."]}
ParamBundle bundle_from_json(const Json& j, Nat bound);

Fuel fuel_from_json(const Json& j, Fuel base = {});

// {"rounds","moves","maximise",(exactly one of "table"),"read_indices"?}
GameSpec game_from_json(const Json& j);

// {"kind": "modular"|"chain"|"random_table"|"affine", ...}
PredFamily family_from_json(const Json& j);

std::vector<ScriptMove> script_from_json(const Json& j);

PartialSeq partial_from_json(const Json& j);

// Selection/outcome palettes for run-psi configs:
//   eps: {"kind":"constant","value"} | {"kind":"affine","a","b"}
//        | {"kind":"witness","family"} | {"kind":"refuter","family"}
//   q:   {"kind":"constant","value"} | {"kind":"sum_reads","indices"}
//        | {"kind":"unbounded_scan"}
EpsDep eps_from_json(const Json& j, std::shared_ptr<RefuterState> refuter_state);
QFun q_from_json(const Json& j);

}  // namespace barrec
