#include "barrec/script.hpp"

#include <string>

namespace barrec {

struct ScriptedOpponent::State {
  std::vector<ScriptMove> script;
  Nat cursor = 0;
  Nat played = 0;

  // Consulted at challenge index n: inject the pending scripted value
  // (driving one recursive call through p), or concede the default without
  // recursing.
  Elem consult(Nat n, const PFun& p) {
    if (cursor < script.size() && script[cursor].index == n) {
      Elem x = script[cursor].value;
      ++cursor;
      ++played;
      p(x);  // the answer is not consulted; the opponent just forces the update
      return x;
    }
    return kDefault;
  }
};

ScriptedOpponent::ScriptedOpponent(std::vector<ScriptMove> script)
    : state_(std::make_shared<State>()) {
  state_->script = std::move(script);
}

QFun ScriptedOpponent::q() const {
  auto st = state_;
  return QFun{[st](TotalSeqView& alpha) -> Tau {
    while (st->cursor < st->script.size()) {
      Nat before = st->cursor;
      alpha.at(st->script[before].index);
      if (st->cursor == before)
        throw Error(ErrorKind::verification,
                    "opponent was not consulted at scripted index " +
                        std::to_string(st->script[before].index) +
                        " (value already settled)");
    }
    return 0;
  }};
}

EpsSimple ScriptedOpponent::eps_simple() const {
  auto st = state_;
  return EpsSimple{[st](Nat, Nat n, const PFun& p) { return st->consult(n, p); }};
}

EpsDep ScriptedOpponent::eps_dep() const {
  auto st = state_;
  return EpsDep{[st](const GenSeqView&, const GenSeqView& r, const PFun& p) {
    return st->consult(r.length_index(), p);
  }};
}

Nat ScriptedOpponent::moves_played() const { return state_->played; }

const std::vector<ScriptMove>& ScriptedOpponent::script() const { return state_->script; }

}  // namespace barrec
