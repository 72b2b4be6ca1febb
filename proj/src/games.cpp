#include "barrec/games.hpp"

#include <algorithm>
#include <string>

#include "barrec/orders.hpp"

namespace barrec {

namespace {

void validate_game(const GameSpec& g) {
  if (g.rounds == 0) throw ConfigError("game needs at least one round");
  if (g.moves == 0) throw ConfigError("game needs at least one move");
  if (g.maximise.size() != g.rounds)
    throw ConfigError("game has " + std::to_string(g.rounds) + " rounds but " +
                      std::to_string(g.maximise.size()) + " player flags");
  if (!g.payoff) throw ConfigError("game has no payoff");
  if (!g.read_indices.empty() && g.read_indices.size() != g.rounds)
    throw ConfigError("read_indices must name one position per round");
}

// round number of sequence position n, if it is a decision point
std::optional<Nat> round_of(const std::vector<Nat>& reads, Nat n) {
  auto it = std::find(reads.begin(), reads.end(), n);
  if (it == reads.end()) return std::nullopt;
  return static_cast<Nat>(it - reads.begin());
}

// optimise the continuation over the round's moves; ties go to the least move
Nat best_move(const GameSpec& g, Nat round, const std::function<Tau(Nat)>& probe) {
  Nat best = 0;
  std::int64_t best_v = 0;
  bool mx = g.maximise[round];
  for (Nat mv = 0; mv < g.moves; ++mv) {
    std::int64_t v = unzigzag(probe(mv));
    if (mv == 0 || (mx ? v > best_v : v < best_v)) {
      best = mv;
      best_v = v;
    }
  }
  return best;
}

}  // namespace

std::vector<Nat> GameSpec::reads() const {
  if (!read_indices.empty()) return read_indices;
  std::vector<Nat> out(rounds);
  for (Nat i = 0; i < rounds; ++i) out[i] = i;
  return out;
}

GameSpec GameSpec::from_table(Nat rounds, Nat moves, std::vector<bool> maximise,
                              std::vector<std::int64_t> table) {
  Nat cells = 1;
  for (Nat i = 0; i < rounds; ++i) {
    if (cells > 1000000 / moves) throw ConfigError("payoff table too large");
    cells *= moves;
  }
  if (table.size() != cells)
    throw ConfigError("payoff table has " + std::to_string(table.size()) + " cells, needs " +
                      std::to_string(cells));
  GameSpec g;
  g.rounds = rounds;
  g.moves = moves;
  g.maximise = std::move(maximise);
  g.payoff = [rounds, moves, table = std::move(table)](const std::vector<Nat>& play) {
    if (play.size() != rounds) throw ConfigError("play has the wrong number of decisions");
    Nat idx = 0;
    for (Nat mv : play) {
      if (mv >= moves) throw ConfigError("decision " + std::to_string(mv) + " out of range");
      idx = idx * moves + mv;
    }
    return table[idx];
  };
  return g;
}

EpsDep eps_from_game(const GameSpec& g) {
  validate_game(g);
  auto reads = g.reads();
  return EpsDep{[g, reads](const GenSeqView&, const GenSeqView& r, const PFun& p) -> Elem {
    Nat n = r.length_index();
    auto round = round_of(reads, n);
    if (!round) return kDefault;  // padding position, nothing at stake
    Nat mv = best_move(g, *round, [&p](Nat x) { return p(Elem(x)); });
    return Elem(mv);
  }};
}

QFun q_from_game(const GameSpec& g) {
  validate_game(g);
  auto reads = g.reads();
  return QFun{[g, reads](TotalSeqView& alpha) -> Tau {
    std::vector<Nat> play;
    play.reserve(reads.size());
    for (Nat k : reads) play.push_back(alpha.at(k).value());
    return zigzag(g.payoff(play));
  }};
}

namespace {

struct GameRun {
  Relation tri;
  std::function<Nat(Nat)> succ;
  TotalSeqView view;
};

GameRun start_run(const GameSpec& g, const Relation& tri, const std::function<Nat(Nat)>& succ,
                  const Fuel& fuel, Trace* trace) {
  Nat least = 0;
  for (Nat k = 0; k <= tri.bound; ++k) {
    if (tri.preds_of(k).empty()) {
      least = k;
      break;
    }
  }
  PsiOptions opts;
  opts.trace = trace;
  TotalSeqView view =
      ps(eps_from_game(g), q_from_game(g), tri, succ, GenSeq{least, PartialSeq{}}, fuel, opts);
  return GameRun{tri, succ, view};
}

Solution read_solution(const GameSpec& g, TotalSeqView view) {
  std::vector<Nat> play;
  for (Nat k : g.reads()) play.push_back(view.at(k).value());
  return Solution{play, g.payoff(play)};
}

}  // namespace

Solution ps_solve(const GameSpec& g, const Fuel& fuel, Trace* trace) {
  validate_game(g);
  Nat top = 0;
  for (Nat k : g.reads()) top = std::max(top, k);
  Relation tri = builtin_relation(BuiltinOrder::lt, top + 2);
  GameRun run = start_run(g, tri, succ_of(tri), fuel, trace);
  return read_solution(g, run.view);
}

Solution oracle_solve(const GameSpec& g) {
  validate_game(g);
  Nat cells = 1;
  for (Nat i = 0; i < g.rounds; ++i) {
    if (cells > 1000000 / g.moves)
      throw ConfigError("game too large for exhaustive backward induction");
    cells *= g.moves;
  }
  struct Best {
    std::int64_t value = 0;
    std::vector<Nat> play;
  };
  std::vector<Nat> prefix;
  std::function<Best()> go = [&]() -> Best {
    if (prefix.size() == g.rounds) return Best{g.payoff(prefix), prefix};
    bool mx = g.maximise[prefix.size()];
    Best best;
    for (Nat mv = 0; mv < g.moves; ++mv) {
      prefix.push_back(mv);
      Best b = go();
      prefix.pop_back();
      if (mv == 0 || (mx ? b.value > best.value : b.value < best.value)) best = std::move(b);
    }
    return best;
  };
  Best b = go();
  return Solution{b.play, b.value};
}

namespace {

EquationWitness equation_witness(const GameSpec& g, const Relation& tri,
                               const std::function<Nat(Nat)>& succ, const Fuel& fuel) {
  GameRun run = start_run(g, tri, succ, fuel, nullptr);
  auto reads = g.reads();
  QFun q = q_from_game(g);

  EquationWitness w;
  std::vector<Nat> play;
  for (Nat k : reads) {
    Elem v = run.view.at(k);
    w.alpha.emplace_back(k, v);
    play.push_back(v.value());
  }
  Tau q_value = zigzag(g.payoff(play));

  for (Nat i = 0; i < reads.size(); ++i) {
    Nat n = reads[i];
    // p_n(x): the outcome when the committed prefix below n is kept, x is
    // played at n, and everything later is re-solved by a fresh run
    auto p_n = [&](Nat x) -> Tau {
      std::map<Nat, Elem> body;
      for (Nat k : tri.preds_of(n)) body.emplace(k, run.view.at(k));
      body.emplace(n, Elem(x));
      GenSeq start{succ(n), PartialSeq(std::move(body))};
      TotalSeqView cont = ps(eps_from_game(g), q, tri, succ, start, fuel);
      return q.call(cont);
    };
    EquationCheck c;
    c.n = n;
    c.alpha_value = run.view.at(n);
    c.eps_value = Elem(best_move(g, i, p_n));
    c.pn_value = p_n(c.eps_value.value());
    c.q_value = q_value;
    w.checks.push_back(c);
  }
  return w;
}

}  // namespace

EquationWitness check_equations(const GameSpec& g, const Fuel& fuel) {
  validate_game(g);
  Nat top = 0;
  for (Nat k : g.reads()) top = std::max(top, k);
  Relation tri = builtin_relation(BuiltinOrder::lt, top + 2);
  return equation_witness(g, tri, succ_of(tri), fuel);
}

EquationWitness check_equations(const GameSpec& g, const Relation& tri,
                             const std::function<Nat(Nat)>& succ, const Fuel& fuel) {
  validate_game(g);
  return equation_witness(g, tri, succ, fuel);
}

}  // namespace barrec
