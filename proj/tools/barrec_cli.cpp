// Command-line front end: evaluate the recursor family, validate parameter
// bundles, solve sequential games, run the choice harness, and dump traces.
// All subcommands read a JSON config and write a JSON report.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <pthread.h>
#include <string>

#include "CLI11.hpp"

#include "barrec/json_io.hpp"
#include "barrec/script.hpp"

using namespace barrec;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string out_path;
  std::optional<Nat> fuel_depth, fuel_dom, fuel_queries;
  Nat seed = 0;
  bool strict_guards = false;

  Fuel fuel(const Json& cfg) const {
    Fuel f;
    if (cfg.contains("fuel")) f = fuel_from_json(cfg.at("fuel"));
    if (fuel_depth) f.max_depth = *fuel_depth;
    if (fuel_dom) f.max_dom = *fuel_dom;
    if (fuel_queries) f.max_queries = *fuel_queries;
    return f;
  }
};

Json load_config(const GlobalOpts& g) {
  if (g.config_path.empty()) return Json::object();
  std::ifstream in(g.config_path);
  if (!in) throw ConfigError("cannot open config file '" + g.config_path + "'");
  Json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return cfg;
}

void write_out(const GlobalOpts& g, const Json& doc) {
  std::string text = doc.dump(2);
  text += '\n';
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) throw ConfigError("cannot open output file '" + g.out_path + "'");
  out << text;
}

Json ok_doc() {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["ok"] = true;
  return doc;
}

const Json& need_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("config missing field '") + key + "'");
  return j.at(key);
}

// --- subcommand bodies -------------------------------------------------------

int cmd_validate(const GlobalOpts& g, const std::string& bundle_name, Nat bound) {
  Json cfg = load_config(g);
  Json jb = bundle_name.empty() ? (cfg.contains("bundle") ? cfg.at("bundle") : Json("bbc"))
                                : Json(bundle_name);
  Nat n_max = cfg.contains("bound") ? cfg.at("bound").get<Nat>() : bound;
  ParamBundle b = bundle_from_json(jb, n_max);
  ValidationReport report = validate_bundle(b, n_max, g.seed);
  Json doc = ok_doc();
  doc["bundle"] = b.name;
  doc["report"] = to_json(report);
  doc["ok"] = report.all_pass();
  write_out(g, doc);
  return report.all_pass() ? 0 : 1;
}

int cmd_run_psi(const GlobalOpts& g) {
  Json cfg = load_config(g);
  Nat bound = cfg.contains("bound") ? cfg.at("bound").get<Nat>() : 32;
  ParamBundle b =
      bundle_from_json(cfg.contains("bundle") ? cfg.at("bundle") : Json("bbc"), bound);
  Fuel fuel = g.fuel(cfg);
  PartialSeq u =
      cfg.contains("start") ? partial_from_json(cfg.at("start")) : PartialSeq{};
  std::string form = cfg.contains("form") ? cfg.at("form").get<std::string>() : "dep";

  Trace trace;
  PsiOptions opts;
  opts.trace = &trace;
  if (g.strict_guards) opts.guards = GuardPolicy::strict;

  auto state = std::make_shared<RefuterState>();
  EpsDep eps;
  QFun q;
  if (cfg.contains("script")) {
    ScriptedOpponent opp(script_from_json(cfg.at("script")));
    eps = opp.eps_dep();
    q = opp.q();
  } else {
    eps = eps_from_json(need_field(cfg, "eps"), state);
    q = q_from_json(need_field(cfg, "q"));
  }

  Json doc = ok_doc();
  if (form == "dep" || form == "simple") {
    doc["answer"] = psi_dep(eps, q, b, u, fuel, opts);
  } else if (form == "tilde") {
    TotalSeqView alpha = psi_tilde(eps, q, b, u, fuel, opts);
    doc["answer"] = q.call(alpha);
    Json vals = Json::array();
    for (const auto& [k, v] : alpha.materialised()) vals.push_back(Json::array({k, v.value()}));
    doc["values"] = std::move(vals);
  } else {
    throw ConfigError("unknown form '" + form + "' (use dep, simple, or tilde)");
  }
  doc["backtracks"] = state->backtracks;
  doc["events"] = trace.events().size();
  write_out(g, doc);
  return 0;
}

int cmd_solve_game(const GlobalOpts& g) {
  Json cfg = load_config(g);
  GameSpec game = game_from_json(need_field(cfg, "game"));
  Fuel fuel = g.fuel(cfg);
  Solution mine = ps_solve(game, fuel);
  Solution oracle = oracle_solve(game);
  bool match = mine == oracle;
  Json doc = ok_doc();
  doc["solution"] = to_json(mine);
  doc["oracle"] = to_json(oracle);
  doc["match"] = match;
  if (cfg.contains("check_equations") && cfg.at("check_equations").get<bool>()) {
    EquationWitness w = check_equations(game, fuel);
    doc["equations"] = to_json(w);
    match = match && w.valid();
  }
  doc["ok"] = match;
  write_out(g, doc);
  return match ? 0 : 1;
}

int cmd_realize_choice(const GlobalOpts& g) {
  Json cfg = load_config(g);
  Nat bound = cfg.contains("bound") ? cfg.at("bound").get<Nat>() : 32;
  ParamBundle b = bundle_from_json(cfg.contains("bundle") ? cfg.at("bundle") : Json("ps"), bound);
  PredFamily fam = family_from_json(need_field(cfg, "family"));
  std::string style_name =
      cfg.contains("style") ? cfg.at("style").get<std::string>() : "witness";
  RealizeStyle style;
  if (style_name == "witness")
    style = RealizeStyle::witness;
  else if (style_name == "refuter")
    style = RealizeStyle::refuter;
  else
    throw ConfigError("unknown style '" + style_name + "'");
  QFun q = cfg.contains("q") ? q_from_json(cfg.at("q")) : QFun{[](TotalSeqView& alpha) -> Tau {
    Tau sum = 0;
    for (Nat k = 0; k < 5; ++k) sum += alpha.at(k).value();
    return sum;
  }};
  RealizationReport report = realize(fam, b, q, style, g.fuel(cfg));
  Json doc = ok_doc();
  doc["family"] = fam.name;
  doc["bundle"] = b.name;
  doc["style"] = style_name;
  doc["report"] = to_json(report);
  doc["ok"] = report.valid();
  write_out(g, doc);
  return report.valid() ? 0 : 1;
}

int cmd_trace(const GlobalOpts& g) {
  Json cfg = load_config(g);
  auto script = script_from_json(need_field(cfg, "script"));
  Nat width = cfg.contains("width") ? cfg.at("width").get<Nat>() : 5;
  std::string runner = cfg.contains("runner") ? cfg.at("runner").get<std::string>() : "bbc";
  Fuel fuel = g.fuel(cfg);
  Nat bound = cfg.contains("bound") ? cfg.at("bound").get<Nat>() : 32;

  Trace trace;
  PsiOptions opts;
  opts.trace = &trace;
  ScriptedOpponent opp(script);
  if (runner == "bbc") {
    bbc(opp.eps_simple(), opp.q(), m_identity, PartialSeq{}, fuel, opts);
  } else if (runner == "mbr1") {
    mbr1(opp.eps_dep(), opp.q(), {}, fuel, opts);
  } else if (runner == "ps") {
    Relation tri = builtin_relation(BuiltinOrder::lt, bound);
    TotalSeqView view =
        ps(opp.eps_dep(), opp.q(), tri, succ_of(tri), GenSeq{0, PartialSeq{}}, fuel, opts);
    opp.q().call(view);
  } else {
    ParamBundle b = bundle_from_json(Json(runner), bound);
    psi_dep(opp.eps_dep(), opp.q(), b, PartialSeq{}, fuel, opts);
  }
  UpdateSequence seq = extract_updates(trace.events(), width, script);
  Json doc = ok_doc();
  doc["runner"] = runner;
  doc["updates"] = to_json(seq);
  doc["events"] = to_json(trace.events());
  write_out(g, doc);
  return 0;
}

int cmd_compare(const GlobalOpts& g) {
  Json cfg = load_config(g);
  ComparePlan plan;
  for (const auto& v : need_field(cfg, "bundles")) plan.bundles.push_back(v.get<std::string>());
  plan.bound = cfg.contains("bound") ? cfg.at("bound").get<Nat>() : 32;
  plan.fuel = g.fuel(cfg);
  if (cfg.contains("width")) plan.width = cfg.at("width").get<Nat>();
  if (cfg.contains("script")) plan.script = script_from_json(cfg.at("script"));
  if (cfg.contains("game")) plan.game = game_from_json(cfg.at("game"));
  if (cfg.contains("family")) plan.family = family_from_json(cfg.at("family"));
  CompareReport report = compare_variants(plan);
  Json doc = ok_doc();
  doc["report"] = to_json(report);
  write_out(g, doc);
  return 0;
}

// The recursors are deeply recursive by design; give them a roomy stack and
// keep main() minimal.
struct RunPlan {
  std::function<int()> body;
  GlobalOpts* globals = nullptr;
  int exit_code = 3;
};

void* run_on_thread(void* arg) {
  auto* plan = static_cast<RunPlan*>(arg);
  try {
    plan->exit_code = plan->body();
  } catch (const Error& e) {
    try {
      write_out(*plan->globals, error_json(e));
    } catch (...) {
      std::cerr << e.what() << "\n";
    }
    plan->exit_code = exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    plan->exit_code = 3;
  }
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parametrised backward recursion over partial sequences"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global options after the subcommand too

  GlobalOpts globals;
  app.add_option("--config", globals.config_path, "JSON config file")->expected(1);
  app.add_option("--out", globals.out_path, "write the JSON report here instead of stdout");
  app.add_option("--fuel-depth", globals.fuel_depth, "max recursion depth");
  app.add_option("--fuel-dom", globals.fuel_dom, "max partial-state size");
  app.add_option("--fuel-queries", globals.fuel_queries, "max filler evaluations per view");
  app.add_option("--seed", globals.seed, "seed for sampled checks");
  app.add_flag("--strict-guards", globals.strict_guards, "raise on guarded-call violations");

  std::string bundle_name;
  Nat bound = 10;
  auto* validate = app.add_subcommand("validate", "check a parameter bundle's side conditions");
  validate->add_option("--bundle", bundle_name, "named bundle");
  validate->add_option("--bound", bound, "fragment bound");

  auto* run_psi = app.add_subcommand("run-psi", "evaluate the recursor on a config");
  auto* solve_game = app.add_subcommand("solve-game", "solve a sequential game and cross-check");
  auto* realize_choice =
      app.add_subcommand("realize-choice", "run the choice harness and verify");
  auto* trace_cmd = app.add_subcommand("trace", "replay a scripted run and dump its events");
  auto* compare = app.add_subcommand("compare", "run one scenario under several bundles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;  // bad invocations count as config errors
  }

  RunPlan plan;
  plan.globals = &globals;
  if (validate->parsed())
    plan.body = [&] { return cmd_validate(globals, bundle_name, bound); };
  else if (run_psi->parsed())
    plan.body = [&] { return cmd_run_psi(globals); };
  else if (solve_game->parsed())
    plan.body = [&] { return cmd_solve_game(globals); };
  else if (realize_choice->parsed())
    plan.body = [&] { return cmd_realize_choice(globals); };
  else if (trace_cmd->parsed())
    plan.body = [&] { return cmd_trace(globals); };
  else if (compare->parsed())
    plan.body = [&] { return cmd_compare(globals); };
  else
    return 3;

  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, 256 * 1024 * 1024);
  pthread_t tid;
  if (pthread_create(&tid, &attr, run_on_thread, &plan) != 0) {
    std::cerr << "failed to start evaluation thread\n";
    return 3;
  }
  pthread_join(tid, nullptr);
  pthread_attr_destroy(&attr);
  return plan.exit_code;
}
