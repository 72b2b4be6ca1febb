#include "barrec/choice.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace barrec {

namespace {

PartialSeq prefix_of(const GenSeqView& r) {
  std::map<Nat, Elem> body;
  for (Nat k : r.indices()) body.emplace(k, r.at(k));
  return PartialSeq(std::move(body));
}

std::optional<Elem> search_witness(const PredFamily& p, Nat n, const PartialSeq& prefix) {
  for (Nat x = 0; x <= p.witness_bound; ++x)
    if (p.holds(n, prefix, Elem(x))) return Elem(x);
  return std::nullopt;
}

}  // namespace

EpsDep eps_witness(const PredFamily& p) {
  if (!p.holds) throw ConfigError("predicate family has no decision procedure");
  return EpsDep{[p](const GenSeqView&, const GenSeqView& r, const PFun&) -> Elem {
    Nat n = r.length_index();
    PartialSeq prefix = prefix_of(r);
    if (auto w = search_witness(p, n, prefix)) return *w;
    throw WitnessError(n, "no witness at index " + std::to_string(n) + " up to " +
                              std::to_string(p.witness_bound));
  }};
}

EpsDep eps_refuter(const PredFamily& p, const ProposeFun& propose,
                   std::shared_ptr<RefuterState> state, const RefuterPost& post) {
  if (!p.holds) throw ConfigError("predicate family has no decision procedure");
  if (!propose) throw ConfigError("refuter needs a proposal function");
  if (!state) throw ConfigError("refuter needs a state cell");
  return EpsDep{[p, propose, state, post](const GenSeqView&, const GenSeqView& r,
                                          const PFun& pf) -> Elem {
    Nat n = r.length_index();
    PartialSeq prefix = prefix_of(r);
    Elem cand = propose(n, prefix);
    if (p.holds(n, prefix, cand)) return cand;
    auto w = search_witness(p, n, prefix);
    if (!w)
      throw WitnessError(n, "no witness at index " + std::to_string(n) + " up to " +
                                std::to_string(p.witness_bound));
    ++state->backtracks;
    Tau ans = pf(*w);  // refute the proposal: probe the continuation once
    return post ? post(*w, ans) : *w;
  }};
}

RealizationReport realize(const PredFamily& p, const ParamBundle& b, const QFun& q,
                          RealizeStyle style, const Fuel& fuel, Trace* trace) {
  auto state = std::make_shared<RefuterState>();
  EpsDep eps = style == RealizeStyle::witness
                   ? eps_witness(p)
                   : eps_refuter(
                         p, [](Nat, const PartialSeq&) { return kDefault; }, state);
  PsiOptions opts;
  opts.trace = trace;
  TotalSeqView alpha = psi_tilde(eps, q, b, PartialSeq{}, fuel, opts);

  RealizationReport report;
  report.final_answer = q.call(alpha);
  report.queried = alpha.query_log();
  report.backtracks = state->backtracks;

  // the queried indices, closed under dependency predecessors
  std::set<Nat> want(report.queried.begin(), report.queried.end());
  for (bool grew = true; grew;) {
    grew = false;
    for (Nat n : std::vector<Nat>(want.begin(), want.end()))
      for (Nat k : b.triangle.preds_of(n)) grew |= want.insert(k).second;
  }
  for (Nat n : want) {
    std::map<Nat, Elem> body;
    for (Nat k : b.triangle.preds_of(n)) body.emplace(k, alpha.at(k));
    bool pass = p.holds(n, PartialSeq(std::move(body)), alpha.at(n));
    report.checks.push_back(RealizationCheck{n, pass});
  }
  return report;
}

bool verify_partial_realizer(const PartialSeq& u, const PredFamily& p, const Relation& r) {
  if (!is_closed(u, r)) return false;
  for (const auto& [n, x] : u.entries()) {
    std::map<Nat, Elem> body;
    for (Nat k : r.preds_of(n)) body.emplace(k, u.at(k));
    if (!p.holds(n, PartialSeq(std::move(body)), x)) return false;
  }
  return true;
}

// --- stock families ---------------------------------------------------------

namespace {

// stateless mixer so family tables are pure functions of their inputs
Nat mix(Nat z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Nat sum_values(const PartialSeq& s) {
  Nat total = 0;
  for (const auto& [_, v] : s.entries()) total += v.value();
  return total;
}

}  // namespace

PredFamily family_modular(Nat modulus) {
  if (modulus == 0) throw ConfigError("modulus must be positive");
  PredFamily f;
  f.name = "modular";
  f.witness_bound = modulus;
  f.holds = [modulus](Nat n, const PartialSeq&, Elem x) {
    return x.value() % modulus == n % modulus;
  };
  return f;
}

PredFamily family_chain(Nat bound) {
  PredFamily f;
  f.name = "chain";
  f.witness_bound = bound;
  f.holds = [](Nat n, const PartialSeq& s, Elem x) {
    Nat prev = 0;
    if (n > 0)
      if (auto v = s.get(n - 1)) prev = v->value();
    return x.value() == prev + 1;
  };
  return f;
}

PredFamily family_random_table(Nat seed, Nat witness_bound, Nat index_cap) {
  PredFamily f;
  f.name = "random_table";
  f.witness_bound = witness_bound;
  f.holds = [seed, witness_bound, index_cap](Nat n, const PartialSeq&, Elem x) {
    if (n > index_cap) return x.value() == 0;
    if (x.value() > witness_bound) return false;
    Nat anchor = mix(seed ^ mix(n)) % (witness_bound + 1);
    if (x.value() == anchor) return true;  // guarantees a nonempty table row
    return mix(seed ^ mix(n * 31 + x.value() + 1)) % 3 == 0;
  };
  return f;
}

PredFamily family_affine(Nat seed, Nat witness_bound) {
  PredFamily f;
  f.name = "affine";
  f.witness_bound = witness_bound;
  Nat a = mix(seed) % (witness_bound + 1);
  Nat b = mix(seed + 1) % (witness_bound + 1);
  Nat c = mix(seed + 2) % (witness_bound + 1);
  f.holds = [a, b, c, witness_bound](Nat n, const PartialSeq& s, Elem x) {
    return x.value() == (a * n + b * sum_values(s) + c) % (witness_bound + 1);
  };
  return f;
}

}  // namespace barrec
