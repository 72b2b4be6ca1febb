#include "barrec/json_io.hpp"

#include <algorithm>

namespace barrec {

namespace {

Json elem_array(const std::vector<Elem>& xs) {
  Json out = Json::array();
  for (Elem x : xs) out.push_back(x.value());
  return out;
}

const Json& need(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("config missing field '") + key + "'");
  return j.at(key);
}

Nat need_nat(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_unsigned()) throw ConfigError(std::string("field '") + key + "' must be a natural");
  return v.get<Nat>();
}

Nat nat_or(const Json& j, const char* key, Nat fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_unsigned())
    throw ConfigError(std::string("field '") + key + "' must be a natural");
  return j.at(key).get<Nat>();
}

}  // namespace

Json to_json(const TraceEvent& ev) {
  Json out;
  out["seq"] = ev.seq;
  out["kind"] = event_kind_name(ev.kind);
  out["u_dom"] = ev.u_dom;
  if (ev.n) out["n"] = *ev.n;
  if (ev.m) out["m"] = *ev.m;
  if (ev.index) out["index"] = *ev.index;
  if (ev.value) out["value"] = ev.value->value();
  if (!ev.entries.empty()) {
    Json entries = Json::array();
    for (const auto& [k, v] : ev.entries) entries.push_back(Json::array({k, v.value()}));
    out["entries"] = std::move(entries);
  }
  return out;
}

Json to_json(const std::vector<TraceEvent>& events) {
  Json out = Json::array();
  for (const auto& ev : events) out.push_back(to_json(ev));
  return out;
}

Json to_json(const UpdateSequence& seq) {
  Json out;
  out["width"] = seq.width;
  Json rows = Json::array();
  for (const auto& row : seq.snapshots) rows.push_back(elem_array(row));
  out["snapshots"] = std::move(rows);
  return out;
}

namespace {

Json to_json(const ConditionResult& r) {
  Json out;
  out["pass"] = r.pass;
  if (r.witness) {
    Json w;
    w["n"] = r.witness->n;
    w["u"] = to_json(r.witness->u);
    w["note"] = r.witness->note;
    out["witness"] = std::move(w);
  }
  return out;
}

}  // namespace

Json to_json(const ValidationReport& report) {
  Json out;
  out["checked_bound"] = report.checked_bound;
  out["sampled_us"] = report.sampled_us;
  out["seed"] = report.seed;
  out["freshness"] = to_json(report.cond_ii);
  out["well_founded_union"] = to_json(report.cond_i);
  out["closedness_preserved"] = to_json(report.cond_iii);
  out["all_pass"] = report.all_pass();
  return out;
}

Json to_json(const Solution& s) {
  Json out;
  out["play"] = s.play;
  out["value"] = s.value;
  return out;
}

Json to_json(const EquationWitness& w) {
  Json out;
  Json alpha = Json::array();
  for (const auto& [k, v] : w.alpha) alpha.push_back(Json::array({k, v.value()}));
  out["alpha"] = std::move(alpha);
  Json checks = Json::array();
  for (const auto& c : w.checks) {
    Json jc;
    jc["n"] = c.n;
    jc["alpha_value"] = c.alpha_value.value();
    jc["eps_value"] = c.eps_value.value();
    jc["pn_value"] = c.pn_value;
    jc["q_value"] = c.q_value;
    jc["ok"] = c.ok();
    checks.push_back(std::move(jc));
  }
  out["checks"] = std::move(checks);
  out["valid"] = w.valid();
  return out;
}

Json to_json(const RealizationReport& report) {
  Json out;
  out["queried"] = report.queried;
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back(Json{{"n", c.n}, {"pass", c.pass}});
  out["checks"] = std::move(checks);
  out["backtracks"] = report.backtracks;
  out["final_answer"] = report.final_answer;
  out["valid"] = report.valid();
  return out;
}

Json to_json(const CompareReport& report) {
  Json out;
  Json variants = Json::array();
  for (const auto& v : report.variants) {
    Json jv;
    jv["bundle"] = v.bundle;
    jv["answer"] = v.answer;
    jv["valid"] = v.valid;
    jv["psi_activations"] = v.psi_activations;
    jv["eps_calls"] = v.eps_calls;
    jv["q_queries"] = v.q_queries;
    jv["max_dom"] = v.max_dom;
    if (!v.snapshots.empty()) {
      Json rows = Json::array();
      for (const auto& row : v.snapshots) rows.push_back(elem_array(row));
      jv["snapshots"] = std::move(rows);
    }
    variants.push_back(std::move(jv));
  }
  out["variants"] = std::move(variants);
  return out;
}

Json to_json(const PartialSeq& u) {
  Json out = Json::array();
  for (const auto& [k, v] : u.entries()) out.push_back(Json::array({k, v.value()}));
  return out;
}

Json error_json(const Error& e) {
  Json err;
  switch (e.kind()) {
    case ErrorKind::config: err["kind"] = "config"; break;
    case ErrorKind::validation: err["kind"] = "validation"; break;
    case ErrorKind::verification: err["kind"] = "verification"; break;
    case ErrorKind::fuel: err["kind"] = "fuel"; break;
    case ErrorKind::cycle: err["kind"] = "cycle"; break;
    case ErrorKind::guard: err["kind"] = "guard"; break;
  }
  err["message"] = e.what();
  if (auto* fe = dynamic_cast<const FuelError*>(&e)) {
    switch (fe->cap) {
      case FuelError::Cap::depth: err["cap"] = "depth"; break;
      case FuelError::Cap::dom: err["cap"] = "dom"; break;
      case FuelError::Cap::queries: err["cap"] = "queries"; break;
    }
    err["depth"] = fe->depth;
    err["dom_size"] = fe->dom_size;
    err["index"] = fe->index;
  } else if (auto* ce = dynamic_cast<const CycleError*>(&e)) {
    err["path"] = ce->path;
  } else if (auto* fr = dynamic_cast<const ConditionError*>(&e)) {
    err["n"] = fr->n;
    err["m"] = fr->m;
    err["u_dom"] = fr->u_dom;
  } else if (auto* we = dynamic_cast<const WitnessError*>(&e)) {
    err["n"] = we->n;
  }
  Json out;
  out["schema"] = kSchemaVersion;
  out["ok"] = false;
  out["error"] = std::move(err);
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::config: return 3;
    case ErrorKind::fuel:
    case ErrorKind::cycle: return 2;
    case ErrorKind::validation:
    case ErrorKind::verification:
    case ErrorKind::guard: return 1;
  }
  return 1;
}

ParamBundle bundle_from_json(const Json& j, Nat bound) {
  if (j.is_string()) return named_bundle(j.get<std::string>(), bound);
  if (!j.is_object()) throw ConfigError("bundle must be a name or an object");
  ParamBundle b = make_bundle(need(j, "triangle").get<std::string>(),
                              need(j, "prec").get<std::string>(),
                              need(j, "m").get<std::string>(), bound);
  if (j.contains("name")) b.name = j.at("name").get<std::string>();
  return b;
}

Fuel fuel_from_json(const Json& j, Fuel base) {
  Fuel f = base;
  f.max_depth = nat_or(j, "max_depth", f.max_depth);
  f.max_dom = nat_or(j, "max_dom", f.max_dom);
  f.max_queries = nat_or(j, "max_queries", f.max_queries);
  return f;
}

GameSpec game_from_json(const Json& j) {
  Nat rounds = need_nat(j, "rounds");
  Nat moves = need_nat(j, "moves");
  const Json& jm = need(j, "maximise");
  if (!jm.is_array()) throw ConfigError("'maximise' must be an array of booleans");
  std::vector<bool> maximise;
  for (const auto& v : jm) maximise.push_back(v.get<bool>());
  const Json& jt = need(j, "table");
  if (!jt.is_array()) throw ConfigError("'table' must be an array of integers");
  std::vector<std::int64_t> table;
  for (const auto& v : jt) table.push_back(v.get<std::int64_t>());
  GameSpec g = GameSpec::from_table(rounds, moves, std::move(maximise), std::move(table));
  if (j.contains("read_indices")) {
    for (const auto& v : j.at("read_indices")) g.read_indices.push_back(v.get<Nat>());
    if (g.read_indices.size() != g.rounds)
      throw ConfigError("read_indices must name one position per round");
  }
  return g;
}

PredFamily family_from_json(const Json& j) {
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "modular") return family_modular(nat_or(j, "modulus", 3));
  if (kind == "chain") return family_chain(nat_or(j, "bound", 64));
  if (kind == "random_table")
    return family_random_table(nat_or(j, "seed", 0), nat_or(j, "witness_bound", 7),
                               nat_or(j, "index_cap", 64));
  if (kind == "affine") return family_affine(nat_or(j, "seed", 0), nat_or(j, "witness_bound", 7));
  throw ConfigError("unknown family kind '" + kind + "'");
}

std::vector<ScriptMove> script_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("script must be an array of [index, value] pairs");
  std::vector<ScriptMove> out;
  for (const auto& mv : j) {
    if (!mv.is_array() || mv.size() != 2)
      throw ConfigError("script moves must be [index, value] pairs");
    out.push_back(ScriptMove{mv.at(0).get<Nat>(), Elem(mv.at(1).get<Nat>())});
  }
  return out;
}

PartialSeq partial_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("partial sequence must be an array of [index, value]");
  std::map<Nat, Elem> body;
  for (const auto& kv : j) {
    if (!kv.is_array() || kv.size() != 2)
      throw ConfigError("partial sequence entries must be [index, value] pairs");
    body.insert_or_assign(kv.at(0).get<Nat>(), Elem(kv.at(1).get<Nat>()));
  }
  return PartialSeq(std::move(body));
}

EpsDep eps_from_json(const Json& j, std::shared_ptr<RefuterState> refuter_state) {
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "constant") {
    Elem v{nat_or(j, "value", 0)};
    return EpsDep{[v](const GenSeqView&, const GenSeqView&, const PFun&) { return v; }};
  }
  if (kind == "affine") {
    Nat a = nat_or(j, "a", 1), b = nat_or(j, "b", 0);
    return EpsDep{[a, b](const GenSeqView&, const GenSeqView& r, const PFun&) {
      return Elem(a * r.length_index() + b);
    }};
  }
  if (kind == "probe") {
    // consults the continuation once, so the recursion actually descends
    Nat v = nat_or(j, "value", 1);
    return EpsDep{[v](const GenSeqView&, const GenSeqView&, const PFun& p) {
      return Elem(v + p(Elem(v)) % (v + 1));
    }};
  }
  if (kind == "witness") return eps_witness(family_from_json(need(j, "family")));
  if (kind == "refuter") {
    if (!refuter_state) throw ConfigError("refuter selection needs a state cell");
    return eps_refuter(
        family_from_json(need(j, "family")), [](Nat, const PartialSeq&) { return kDefault; },
        refuter_state);
  }
  throw ConfigError("unknown selection kind '" + kind + "'");
}

QFun q_from_json(const Json& j) {
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "constant") {
    Tau v = nat_or(j, "value", 0);
    return QFun{[v](TotalSeqView&) { return v; }};
  }
  if (kind == "sum_reads") {
    std::vector<Nat> indices;
    for (const auto& v : need(j, "indices")) indices.push_back(v.get<Nat>());
    return QFun{[indices](TotalSeqView& alpha) {
      Tau sum = 0;
      for (Nat k : indices) sum += alpha.at(k).value();
      return sum;
    }};
  }
  if (kind == "unbounded_scan") {
    // looks for a value it will never find; only the query cap stops it
    return QFun{[](TotalSeqView& alpha) -> Tau {
      for (Nat k = 0;; ++k)
        if (alpha.at(k).value() == ~Nat{0}) return k;
    }};
  }
  throw ConfigError("unknown outcome kind '" + kind + "'");
}

}  // namespace barrec
