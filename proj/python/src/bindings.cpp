// Python bindings for the bar-recursion workbench.  Selection functions and
// outcome functionals may be Python callables (driving the C++ engine
// directly) or palette configs in the same JSON vocabulary the CLI accepts;
// structured reports travel back as JSON text and are decoded in __init__.py
// so both front ends share one schema.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "barrec/json_io.hpp"

namespace py = pybind11;
using namespace barrec;

namespace {

Json parse_json(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError(std::string(what) + " is not valid JSON");
  return j;
}

Fuel fuel_args(Nat max_depth, Nat max_dom, Nat max_queries) {
  Fuel f;
  f.max_depth = max_depth;
  f.max_dom = max_dom;
  f.max_queries = max_queries;
  return f;
}

ParamBundle bundle_arg(const std::string& spec, Nat bound) {
  // accepts a bare bundle name or a JSON object naming the three pieces
  Json j = Json::parse(spec, nullptr, false);
  if (j.is_discarded()) return named_bundle(spec, bound);
  return bundle_from_json(j, bound);
}

PartialSeq partial_arg(const py::dict& d) {
  std::map<Nat, Elem> entries;
  for (auto item : d)
    entries.emplace(item.first.cast<Nat>(), Elem(item.second.cast<Nat>()));
  return PartialSeq(std::move(entries));
}

// hands the continuation to Python as a plain int -> int callable
py::cpp_function continuation(const PFun& p) {
  return py::cpp_function([p](Nat x) -> Tau { return p(Elem(x)); });
}

EpsSimple eps_simple_arg(const py::function& f) {
  return EpsSimple{[f](Nat m, Nat n, const PFun& p) -> Elem {
    return Elem(f(m, n, continuation(p)).cast<Nat>());
  }};
}

EpsDep eps_dep_arg(const py::object& spec) {
  if (py::isinstance<py::str>(spec))
    return eps_from_json(parse_json(spec.cast<std::string>(), "selection config"),
                         std::make_shared<RefuterState>());
  py::function f = spec.cast<py::function>();
  return EpsDep{[f](const GenSeqView& s, const GenSeqView& r, const PFun& p) -> Elem {
    return Elem(f(s, r, continuation(p)).cast<Nat>());
  }};
}

QFun q_arg(const py::object& spec) {
  if (py::isinstance<py::str>(spec))
    return q_from_json(parse_json(spec.cast<std::string>(), "outcome config"));
  py::function f = spec.cast<py::function>();
  return QFun{[f](TotalSeqView& v) -> Tau {
    TotalSeqView shared = v;  // copies share the log and memo
    return f(shared).cast<Tau>();
  }};
}

py::dict view_summary(TotalSeqView& alpha, Tau answer) {
  py::dict out;
  out["answer"] = answer;
  out["queried"] = alpha.query_log();
  out["modulus"] = alpha.modulus();
  py::dict values;
  for (const auto& [k, v] : alpha.materialised()) values[py::int_(k)] = v.value();
  out["values"] = values;
  return out;
}

PredFamily family_custom(const std::string& name, Nat witness_bound, const py::function& holds) {
  PredFamily fam;
  fam.name = name;
  fam.witness_bound = witness_bound;
  fam.holds = [holds](Nat n, const PartialSeq& s, Elem x) -> bool {
    py::dict prefix;
    for (const auto& [k, v] : s.entries()) prefix[py::int_(k)] = v.value();
    return holds(n, prefix, x.value()).cast<bool>();
  };
  return fam;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parametrised bar recursion over partial sequences: recursors, "
            "order bundles, sequential games, and choice realization.";

  // exception hierarchy; subclass translators registered after the base so
  // they win when both match
  static auto exc_base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", exc_base);
  py::register_exception<BoundError>(m, "BoundError", exc_base);
  py::register_exception<FuelError>(m, "FuelError", exc_base);
  py::register_exception<CycleError>(m, "CycleError", exc_base);
  py::register_exception<ConditionError>(m, "ConditionError", exc_base);
  py::register_exception<ClosednessError>(m, "ClosednessError", exc_base);
  py::register_exception<GuardError>(m, "GuardError", exc_base);
  py::register_exception<WitnessError>(m, "WitnessError", exc_base);

  py::class_<TotalSeqView>(m, "SeqView",
                           "Total view of a partial sequence; reads force and log the filler.")
      .def("at", [](TotalSeqView& v, Nat n) { return v.at(n).value(); }, py::arg("n"))
      .def("peek",
           [](const TotalSeqView& v, Nat n) -> py::object {
             auto e = v.peek(n);
             return e ? py::cast(e->value()) : py::none();
           },
           py::arg("n"))
      .def_property_readonly("query_log",
                             [](const TotalSeqView& v) { return v.query_log(); })
      .def_property_readonly("modulus", [](const TotalSeqView& v) { return v.modulus(); })
      .def("materialised", [](const TotalSeqView& v) {
        py::dict out;
        for (const auto& [k, e] : v.materialised()) out[py::int_(k)] = e.value();
        return out;
      });

  py::class_<GenSeqView>(m, "SegView",
                         "Lazily forced segment: indices are known, values load on read.")
      .def_property_readonly("length_index", &GenSeqView::length_index)
      .def_property_readonly("indices",
                             [](const GenSeqView& s) { return s.indices(); })
      .def("at", [](const GenSeqView& s, Nat k) { return s.at(k).value(); }, py::arg("k"))
      .def("__len__", [](const GenSeqView& s) { return s.indices().size(); });

  // --- recursors -------------------------------------------------------------

  m.def(
      "run_psi",
      [](const std::string& form, const std::string& bundle, const py::object& eps,
         const py::object& q, const py::dict& start, Nat bound, Nat max_depth, Nat max_dom,
         Nat max_queries) -> py::object {
        ParamBundle b = bundle_arg(bundle, bound);
        Fuel fuel = fuel_args(max_depth, max_dom, max_queries);
        PartialSeq u = partial_arg(start);
        QFun qf = q_arg(q);
        if (form == "simple")
          return py::cast(psi_simple(eps_simple_arg(eps.cast<py::function>()), qf, b, u, fuel));
        if (form == "dep") return py::cast(psi_dep(eps_dep_arg(eps), qf, b, u, fuel));
        if (form == "tilde") {
          TotalSeqView alpha = psi_tilde(eps_dep_arg(eps), qf, b, u, fuel);
          return view_summary(alpha, qf.call(alpha));
        }
        throw ConfigError("unknown form '" + form + "' (use simple, dep, or tilde)");
      },
      py::arg("form"), py::arg("bundle"), py::arg("eps"), py::arg("q"),
      py::arg("start") = py::dict(), py::arg("bound") = 64, py::arg("max_depth") = 10000,
      py::arg("max_dom") = 1000, py::arg("max_queries") = 100000,
      "Run the parametrised recursor and answer the outcome functional.");

  m.def(
      "run_bbc",
      [](const py::function& eps, const py::object& q, const py::dict& start, Nat max_depth,
         Nat max_dom, Nat max_queries) {
        return bbc(eps_simple_arg(eps), q_arg(q), m_identity, partial_arg(start),
                   fuel_args(max_depth, max_dom, max_queries));
      },
      py::arg("eps"), py::arg("q"), py::arg("start") = py::dict(), py::arg("max_depth") = 10000,
      py::arg("max_dom") = 1000, py::arg("max_queries") = 100000,
      "Single-point instantiation: each challenged index updates itself.");

  m.def(
      "run_mbr1",
      [](const py::object& eps, const py::object& q, const std::vector<Nat>& s, Nat max_depth,
         Nat max_dom, Nat max_queries) {
        std::vector<Elem> start;
        start.reserve(s.size());
        for (Nat v : s) start.push_back(Elem(v));
        return mbr1(eps_dep_arg(eps), q_arg(q), start,
                    fuel_args(max_depth, max_dom, max_queries));
      },
      py::arg("eps"), py::arg("q"), py::arg("s") = std::vector<Nat>{},
      py::arg("max_depth") = 10000, py::arg("max_dom") = 1000, py::arg("max_queries") = 100000,
      "Append-only instantiation over an initial finite sequence.");

  m.def(
      "run_ps",
      [](const py::object& eps, const py::object& q, const std::string& order, Nat bound,
         Nat max_depth, Nat max_dom, Nat max_queries) {
        Relation tri = builtin_relation(order, bound);
        Fuel fuel = fuel_args(max_depth, max_dom, max_queries);
        QFun qf = q_arg(q);
        TotalSeqView alpha = ps(eps_dep_arg(eps), qf, tri, succ_of(tri), GenSeq{}, fuel);
        return view_summary(alpha, qf.call(alpha));
      },
      py::arg("eps"), py::arg("q"), py::arg("order") = "lt", py::arg("bound") = 32,
      py::arg("max_depth") = 10000, py::arg("max_dom") = 1000, py::arg("max_queries") = 100000,
      "Product-of-selection-functions instantiation from the empty segment.");

  // --- validation, games, realization (JSON-text reports) --------------------

  m.def(
      "_validate_json",
      [](const std::string& bundle, Nat n_max, Nat seed, Nat bound) {
        return to_json(validate_bundle(bundle_arg(bundle, bound), n_max, seed)).dump();
      },
      py::arg("bundle"), py::arg("n_max"), py::arg("seed"), py::arg("bound"));

  m.def(
      "_solve_game_json",
      [](const std::string& game, bool check_equations, Nat max_depth, Nat max_dom,
         Nat max_queries) {
        GameSpec g = game_from_json(parse_json(game, "game"));
        Fuel fuel = fuel_args(max_depth, max_dom, max_queries);
        Json doc;
        doc["solution"] = to_json(ps_solve(g, fuel));
        doc["oracle"] = to_json(oracle_solve(g));
        doc["match"] = doc["solution"] == doc["oracle"];
        if (check_equations) doc["equations"] = to_json(barrec::check_equations(g, fuel));
        return doc.dump();
      },
      py::arg("game"), py::arg("check_equations"), py::arg("max_depth"), py::arg("max_dom"),
      py::arg("max_queries"));

  m.def(
      "_realize_json",
      [](const py::object& family, const std::string& bundle, const py::object& q,
         const std::string& style, Nat bound, Nat max_depth, Nat max_dom, Nat max_queries) {
        PredFamily fam;
        if (py::isinstance<py::str>(family)) {
          fam = family_from_json(parse_json(family.cast<std::string>(), "family config"));
        } else {
          auto t = family.cast<py::tuple>();
          fam = family_custom(t[0].cast<std::string>(), t[1].cast<Nat>(),
                              t[2].cast<py::function>());
        }
        RealizeStyle st;
        if (style == "witness")
          st = RealizeStyle::witness;
        else if (style == "refuter")
          st = RealizeStyle::refuter;
        else
          throw ConfigError("unknown style '" + style + "' (use witness or refuter)");
        auto rep = realize(fam, bundle_arg(bundle, bound), q_arg(q), st,
                           fuel_args(max_depth, max_dom, max_queries));
        return to_json(rep).dump();
      },
      py::arg("family"), py::arg("bundle"), py::arg("q"), py::arg("style"), py::arg("bound"),
      py::arg("max_depth"), py::arg("max_dom"), py::arg("max_queries"));

  // --- scripted dialogues ------------------------------------------------------

  m.def(
      "scripted_updates",
      [](const std::string& bundle, const std::vector<std::pair<Nat, Nat>>& script, Nat width,
         Nat bound) {
        std::vector<ScriptMove> moves;
        moves.reserve(script.size());
        for (const auto& [n, x] : script) moves.push_back(ScriptMove{n, Elem(x)});
        ScriptedOpponent opp(moves);
        Trace trace;
        PsiOptions opts;
        opts.trace = &trace;
        Fuel fuel;
        if (bundle == "ps") {
          // the sequence form settles whole segments; the flat runner would
          // end the dialogue early by defaulting every pending position
          auto tri = builtin_relation("lt", bound);
          auto alpha = ps(opp.eps_dep(), opp.q(), tri, succ_of(tri), GenSeq{}, fuel, opts);
          opp.q().call(alpha);
        } else {
          psi_dep(opp.eps_dep(), opp.q(), bundle_arg(bundle, bound), PartialSeq{}, fuel,
                  opts);
        }
        auto seq = extract_updates(trace.events(), width, moves);
        std::vector<std::vector<Nat>> rows;
        rows.reserve(seq.snapshots.size());
        for (const auto& snap : seq.snapshots) {
          std::vector<Nat> row;
          row.reserve(snap.size());
          for (Elem e : snap) row.push_back(e.value());
          rows.push_back(std::move(row));
        }
        return rows;
      },
      py::arg("bundle"), py::arg("script"), py::arg("width") = 5, py::arg("bound") = 16,
      "Replay a scripted opponent and return the evolving width-wide snapshots.");

  // --- encodings ----------------------------------------------------------------

  m.def("pair_encode", [](Nat a, Nat b) { return pair_encode(a, b); }, py::arg("a"),
        py::arg("b"));
  m.def("pair_first", [](Nat z) { return pair_first(z); }, py::arg("z"));
  m.def("pair_second", [](Nat z) { return pair_second(z); }, py::arg("z"));
  m.def("zigzag", [](std::int64_t v) { return zigzag(v); }, py::arg("v"));
  m.def("unzigzag", [](Nat n) { return unzigzag(n); }, py::arg("n"));

  m.attr("__version__") = "0.1.0";
}
