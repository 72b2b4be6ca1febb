#include "barrec/compare.hpp"

#include <algorithm>
#include <future>

#include "barrec/psi.hpp"
#include "barrec/trace.hpp"

namespace barrec {

namespace {

void fill_stats(VariantStats& out, const Trace& trace) {
  for (const auto& ev : trace.events()) {
    switch (ev.kind) {
      case EventKind::psi_enter: ++out.psi_activations; break;
      case EventKind::eps_call: ++out.eps_calls; break;
      case EventKind::q_query: ++out.q_queries; break;
      default: break;
    }
    out.max_dom = std::max<Nat>(out.max_dom, ev.u_dom.size());
  }
}

VariantStats run_variant(const ComparePlan& plan, const std::string& name) {
  VariantStats out;
  out.bundle = name;
  Trace trace;
  ParamBundle b = named_bundle(name, plan.bound);  // unknown names are config errors
  try {
    PsiOptions opts;
    opts.trace = &trace;
    if (plan.script) {
      ScriptedOpponent opp(*plan.script);
      if (name == "ps") {
        // the eager engine would settle unchallenged indices with defaults
        // and the script could no longer drive them; use the sequence form,
        // whose recursive calls keep only the down-set of the refuted index
        TotalSeqView view = ps(opp.eps_dep(), opp.q(), b.triangle, succ_of(b.triangle),
                               GenSeq{0, PartialSeq{}}, plan.fuel, opts);
        out.answer = opp.q().call(view);
      } else {
        out.answer = psi_dep(opp.eps_dep(), opp.q(), b, PartialSeq{}, plan.fuel, opts);
      }
      out.snapshots = extract_updates(trace.events(), plan.width, *plan.script).snapshots;
    } else if (plan.game) {
      out.answer = psi_dep(eps_from_game(*plan.game), q_from_game(*plan.game), b, PartialSeq{},
                           plan.fuel, opts);
      out.valid = out.answer == zigzag(oracle_solve(*plan.game).value);
    } else if (plan.family) {
      QFun q{[width = plan.width](TotalSeqView& alpha) -> Tau {
        Nat sum = 0;
        for (Nat k = 0; k < width; ++k) sum += alpha.at(k).value();
        return sum;
      }};
      RealizationReport report =
          realize(*plan.family, b, q, RealizeStyle::witness, plan.fuel, &trace);
      out.answer = report.final_answer;
      out.valid = report.valid();
    } else {
      throw ConfigError("compare plan has no scenario");
    }
  } catch (const Error&) {
    out.valid = false;
  }
  fill_stats(out, trace);
  return out;
}

}  // namespace

CompareReport compare_variants(const ComparePlan& plan) {
  if (plan.bundles.empty()) throw ConfigError("compare plan names no bundles");
  int scenarios = (plan.script ? 1 : 0) + (plan.game ? 1 : 0) + (plan.family ? 1 : 0);
  if (scenarios != 1) throw ConfigError("compare plan needs exactly one scenario");

  std::vector<std::future<VariantStats>> futures;
  futures.reserve(plan.bundles.size());
  for (const auto& name : plan.bundles)
    futures.push_back(
        std::async(std::launch::async, [&plan, name] { return run_variant(plan, name); }));

  CompareReport report;
  for (auto& f : futures) report.variants.push_back(f.get());
  std::sort(report.variants.begin(), report.variants.end(),
            [](const VariantStats& a, const VariantStats& b) { return a.bundle < b.bundle; });
  return report;
}

}  // namespace barrec
