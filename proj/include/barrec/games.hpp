#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "barrec/psi.hpp"

namespace barrec {

// A finite sequential game: `rounds` decision points, `moves` legal moves at
// each, an integer payoff over the decisions, and a per-round flag saying
// whether that round's player maximises or minimises.
//
// read_indices names the sequence positions the payoff actually reads,
// in reading order; empty means positions 0..rounds-1.  Positions outside it
// are padding and get move 0.
struct GameSpec {
  Nat rounds = 0;
  Nat moves = 0;
  std::vector<bool> maximise;
  std::function<std::int64_t(const std::vector<Nat>&)> payoff;
  std::vector<Nat> read_indices;

  std::vector<Nat> reads() const;

  // Row-major table over moves^rounds outcomes.
  static GameSpec from_table(Nat rounds, Nat moves, std::vector<bool> maximise,
                             std::vector<std::int64_t> table);
};

// The game's selection functions: at a read position, the move optimising
// the continuation p (ties to the least move); move 0 elsewhere.  Payoffs
// travel zig-zag encoded through the Nat answer type.
EpsDep eps_from_game(const GameSpec& g);

// The game's outcome functional: reads exactly the payoff positions, in
// order, and encodes the payoff.
QFun q_from_game(const GameSpec& g);

struct Solution {
  std::vector<Nat> play;
  std::int64_t value = 0;

  friend bool operator==(const Solution& a, const Solution& b) {
    return a.play == b.play && a.value == b.value;
  }
};

// Solves by running the product of selection functions from the empty state.
Solution ps_solve(const GameSpec& g, const Fuel& fuel, Trace* trace = nullptr);

// Independent brute-force backward induction (guarded to moves^rounds <= 1e6).
Solution oracle_solve(const GameSpec& g);

struct EquationCheck {
  Nat n = 0;
  Elem alpha_value;  // what the run committed at n
  Elem eps_value;    // the selection recomputed against p_n
  Tau pn_value = 0;  // p_n at the recomputed selection
  Tau q_value = 0;   // q on the full play

  bool ok() const { return alpha_value == eps_value && pn_value == q_value; }
};

struct EquationWitness {
  std::vector<std::pair<Nat, Elem>> alpha;  // the committed play at checked indices
  std::vector<EquationCheck> checks;

  bool valid() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
};

// Verifies the two fixed-point equations of the solved game at every payoff
// position: the committed move equals the selection against p_n, and p_n at
// that move equals the overall outcome.
EquationWitness check_equations(const GameSpec& g, const Fuel& fuel);

// Same, over an arbitrary total dependency order.
EquationWitness check_equations(const GameSpec& g, const Relation& tri,
                             const std::function<Nat(Nat)>& succ, const Fuel& fuel);

}  // namespace barrec
