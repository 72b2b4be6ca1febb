#include "barrec/recursors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace barrec {

namespace {

struct WrRun {
  const Relation& r;
  const WrBody& body;
  Nat max_depth;
  GuardPolicy policy;
  Trace* trace;
  std::map<Nat, Tau> memo;
  std::vector<Nat> stack;
  std::set<Nat> running;

  Tau eval(Nat n) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    if (running.count(n)) {
      auto from = std::find(stack.begin(), stack.end(), n);
      std::vector<Nat> path(from, stack.end());
      path.push_back(n);
      throw CycleError(std::move(path));
    }
    if (stack.size() >= max_depth)
      throw FuelError(FuelError::Cap::depth,
                      "well-founded recursion exceeded depth " + std::to_string(max_depth),
                      stack.size(), 0, n);
    running.insert(n);
    stack.push_back(n);
    if (trace) {
      auto& ev = trace->emit(EventKind::wr_step);
      ev.index = n;
    }
    WrRec rec = [this, n](Nat y) -> Tau {
      if (!r.holds(y, n)) {
        if (policy == GuardPolicy::strict)
          throw GuardError("recursive call at " + std::to_string(y) +
                           " is not below " + std::to_string(n));
        return 0;
      }
      return eval(y);
    };
    Tau v = body(n, rec);
    stack.pop_back();
    running.erase(n);
    memo.emplace(n, v);
    return v;
  }
};

Tau bk_run(const BkBody& body, const PartialSeq& u, const Fuel& fuel, GuardPolicy policy,
           Trace* trace, Nat depth, bool open_mode) {
  if (depth >= fuel.max_depth)
    throw FuelError(FuelError::Cap::depth,
                    "recursion exceeded depth " + std::to_string(fuel.max_depth), depth,
                    u.size());
  if (u.size() > fuel.max_dom)
    throw FuelError(FuelError::Cap::dom,
                    "state exceeded " + std::to_string(fuel.max_dom) + " entries", depth,
                    u.size());
  if (trace) {
    auto& ev = trace->emit(EventKind::psi_enter);
    ev.u_dom = u.domain();
    for (const auto& [k, v] : u.entries()) ev.entries.emplace_back(k, v);
  }
  BkCont f = [&](Nat n, const PartialSeq& v) -> Tau {
    bool fresh = v.defined(n) && !u.defined(n);
    if (!fresh) {
      if (policy == GuardPolicy::strict)
        throw GuardError("recursive call at index " + std::to_string(n) +
                         " does not add a new point");
      return 0;
    }
    if (trace) {
      auto& ev = trace->emit(EventKind::update_applied);
      ev.u_dom = u.domain();
      ev.index = n;
      ev.value = v.at(n);
    }
    PartialSeq base = open_mode ? truncate_lt(u, n) : u;
    return bk_run(body, overwrite(base, v), fuel, policy, trace, depth + 1, open_mode);
  };
  Tau out = body(u, f);
  if (trace) {
    auto& ev = trace->emit(EventKind::psi_exit);
    ev.u_dom = u.domain();
    ev.value = Elem(out);
  }
  return out;
}

}  // namespace

Tau well_founded_rec(const Relation& r, const WrBody& body, Nat n, Nat max_depth,
                     GuardPolicy policy, Trace* trace) {
  WrRun run{r, body, max_depth, policy, trace, {}, {}, {}};
  return run.eval(n);
}

Tau backward_rec(const BkBody& body, const PartialSeq& u, const Fuel& fuel, GuardPolicy policy,
                 Trace* trace) {
  return bk_run(body, u, fuel, policy, trace, 0, false);
}

Tau open_rec(const BkBody& body, const PartialSeq& u, const Fuel& fuel, GuardPolicy policy,
             Trace* trace) {
  return bk_run(body, u, fuel, policy, trace, 0, true);
}

Nat least_new_index(Nat n, const PartialSeq& u, const PartialSeq& v) {
  for (Nat i = 0; i <= n; ++i)
    if (v.defined(i) && !u.defined(i)) return i;
  return n;
}

Tau backward_rec_via_open(const BkBody& body, const PartialSeq& u, const Fuel& fuel,
                          GuardPolicy policy, Trace* trace) {
  // redirect every call to the least new index; merging first makes the
  // open-mode truncation there harmless
  BkBody translated = [&body, policy](const PartialSeq& w, const BkCont& f) -> Tau {
    BkCont g = [&](Nat n, const PartialSeq& v) -> Tau {
      if (!(v.defined(n) && !w.defined(n))) {
        if (policy == GuardPolicy::strict)
          throw GuardError("recursive call at index " + std::to_string(n) +
                           " does not add a new point");
        return 0;
      }
      return f(least_new_index(n, w, v), overwrite(w, v));
    };
    return body(w, g);
  };
  return open_rec(translated, u, fuel, policy, trace);
}

Tau update_rec(const UpBody& body, const PartialSeq& u, const Fuel& fuel, GuardPolicy policy,
               Trace* trace) {
  BkBody wrapped = [&body, policy](const PartialSeq& w, const BkCont& f) -> Tau {
    UpCont g = [&](Nat n, Elem x) -> Tau {
      if (w.defined(n)) {
        if (policy == GuardPolicy::strict)
          throw GuardError("update at already-defined index " + std::to_string(n));
        return 0;
      }
      return f(n, update(w, n, x));
    };
    return body(w, g);
  };
  return backward_rec(wrapped, u, fuel, policy, trace);
}

Tau bar_rec(const BarBody& body, const std::vector<Elem>& s, const Fuel& fuel,
            GuardPolicy policy, Trace* trace) {
  BkBody wrapped = [&body, &fuel, policy, trace](const PartialSeq& w, const BkCont& f) -> Tau {
    TotalSeqView view = overwrite_total(w, [](Nat) { return kDefault; });
    view.set_query_cap(fuel.max_queries);
    view.set_trace(trace);
    BarCont k = [&](const std::vector<Elem>& t) -> Tau {
      if (t.size() <= w.size()) {
        if (policy == GuardPolicy::strict)
          throw GuardError("bar-recursive call must strictly extend the sequence");
        return 0;
      }
      return f(t.size() - 1, fin_embed(t));
    };
    return body(view, k);
  };
  return backward_rec(wrapped, fin_embed(s), fuel, policy, trace);
}

}  // namespace barrec
