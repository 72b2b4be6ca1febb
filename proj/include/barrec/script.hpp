#pragma once

#include <memory>
#include <vector>

#include "barrec/psi.hpp"
#include "barrec/trace.hpp"

namespace barrec {

// A deterministic opponent replaying a fixed script of (index, value) moves.
// Its outcome functional challenges the scripted indices in order; its
// selection wrapper supplies the scripted value (driving one recursive call)
// exactly when consulted at the pending challenge index, and concedes the
// default element everywhere else.  Shared state ties the two together, so
// one opponent instance drives one run.
class ScriptedOpponent {
 public:
  explicit ScriptedOpponent(std::vector<ScriptMove> script);

  QFun q() const;
  EpsSimple eps_simple() const;
  EpsDep eps_dep() const;

  Nat moves_played() const;
  const std::vector<ScriptMove>& script() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

}  // namespace barrec
