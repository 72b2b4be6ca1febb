#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "barrec/psi.hpp"

namespace barrec {

// A decidable predicate family A_n(s, x): does x qualify at index n given
// the dependency prefix s?  Witness search never looks above witness_bound.
struct PredFamily {
  std::string name = "custom";
  Nat witness_bound = 0;
  std::function<bool(Nat n, const PartialSeq& s, Elem x)> holds;
};

// Selection by exhaustive search: the least qualifying value, ignoring the
// continuation entirely.
EpsDep eps_witness(const PredFamily& p);

struct RefuterState {
  Nat backtracks = 0;
};

using ProposeFun = std::function<Elem(Nat, const PartialSeq&)>;
// Post-processor applied after a backtrack: sees the searched witness and
// the continuation's answer, returns what to commit.  The default keeps the
// witness.
using RefuterPost = std::function<Elem(Elem, Tau)>;

// Selection by proposal and backtracking: commit the proposal when it
// qualifies; otherwise search a witness, probe the continuation with it
// (one backtrack), and commit post(witness, answer).
EpsDep eps_refuter(const PredFamily& p, const ProposeFun& propose,
                   std::shared_ptr<RefuterState> state, const RefuterPost& post = {});

enum class RealizeStyle { witness, refuter };

struct RealizationCheck {
  Nat n = 0;
  bool pass = false;
};

struct RealizationReport {
  std::vector<Nat> queried;               // the outcome functional's query log
  std::vector<RealizationCheck> checks;   // log closed under dependency predecessors
  Nat backtracks = 0;
  Tau final_answer = 0;

  bool valid() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Runs the sequence-form recursor from the empty state against the family's
// selection functions, answers q, then re-checks the predicate at every
// queried index (closed under triangle-predecessors).
RealizationReport realize(const PredFamily& p, const ParamBundle& b, const QFun& q,
                          RealizeStyle style, const Fuel& fuel, Trace* trace = nullptr);

// Does the finished fragment u satisfy the family pointwise (with closed
// domain)?
bool verify_partial_realizer(const PartialSeq& u, const PredFamily& p, const Relation& r);

// Stock families.
PredFamily family_modular(Nat modulus = 3);            // x == n mod `modulus`
PredFamily family_chain(Nat bound = 64);               // x == 1 + value at the previous index
PredFamily family_random_table(Nat seed, Nat witness_bound, Nat index_cap);
PredFamily family_affine(Nat seed, Nat witness_bound);  // x == (a*n + b*sum(s) + c) mod (bound+1)

}  // namespace barrec
