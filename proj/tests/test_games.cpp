#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "barrec/games.hpp"
#include "barrec/orders.hpp"

#include "helpers.hpp"

using namespace barrec;
using namespace barrec::testing;

namespace {

GameSpec rand_game(Nat seed, Nat rounds, Nat moves) {
  std::vector<bool> maxi;
  for (Nat i = 0; i < rounds; ++i) maxi.push_back(mix2(seed, 100 + i) & 1);
  Nat cells = 1;
  for (Nat i = 0; i < rounds; ++i) cells *= moves;
  std::vector<std::int64_t> table;
  for (Nat i = 0; i < cells; ++i)
    table.push_back(std::int64_t(mix2(seed, i) % 41) - 20);
  return GameSpec::from_table(rounds, moves, std::move(maxi), std::move(table));
}

}  // namespace

TEST_CASE("table games index row-major and reject malformed input") {
  auto g = GameSpec::from_table(2, 2, {true, true}, {3, 0, 2, 1});
  CHECK(g.payoff({0, 0}) == 3);
  CHECK(g.payoff({0, 1}) == 0);
  CHECK(g.payoff({1, 0}) == 2);
  CHECK(g.payoff({1, 1}) == 1);
  CHECK(g.reads() == std::vector<Nat>{0, 1});
  CHECK_THROWS_AS(GameSpec::from_table(2, 2, {true, true}, {1, 2, 3}), ConfigError);
  CHECK_THROWS_AS(g.payoff({0}), ConfigError);
  CHECK_THROWS_AS(g.payoff({0, 5}), ConfigError);
}

TEST_CASE("backward induction on a worked max-max example") {
  // If the first player opens 0 the second can reach 3; opening 1 caps at 2.
  // But the second player moves to maximise too, so 0 then 0 gives 3... the
  // table below instead rewards (1,1): row 0 -> best 1, row 1 -> best 2, and
  // the opener prefers row 1.
  auto g = GameSpec::from_table(2, 2, {true, true}, {0, 1, 0, 2});
  auto sol = oracle_solve(g);
  CHECK(sol.value == 2);
  CHECK(sol.play == std::vector<Nat>{1, 1});
}

TEST_CASE("min rounds flip the induction") {
  // the second player minimises: row 0 yields 0, row 1 yields 1; the
  // maximising opener takes row 1
  auto g = GameSpec::from_table(2, 2, {true, false}, {0, 1, 2, 1});
  auto sol = oracle_solve(g);
  CHECK(sol.value == 1);
  CHECK(sol.play == std::vector<Nat>{1, 1});

  // all-minimising: the least cell reachable is -4 at (0,1)
  auto g2 = GameSpec::from_table(2, 2, {false, false}, {0, -4, -3, -1});
  auto sol2 = oracle_solve(g2);
  CHECK(sol2.value == -4);
  CHECK(sol2.play == std::vector<Nat>{0, 1});
}

TEST_CASE("ties resolve to the least move in both solvers") {
  auto g = GameSpec::from_table(2, 2, {true, true}, {5, 5, 5, 5});
  CHECK(oracle_solve(g).play == std::vector<Nat>{0, 0});
  CHECK(ps_solve(g, Fuel{}).play == std::vector<Nat>{0, 0});
}

TEST_CASE("the selection-function solver agrees with the oracle") {
  for (Nat seed = 0; seed < 60; ++seed) {
    Nat rounds = 1 + seed % 4;
    Nat moves = 2 + seed % 2;
    auto g = rand_game(seed, rounds, moves);
    auto brute = oracle_solve(g);
    auto sel = ps_solve(g, Fuel{});
    CAPTURE(seed);
    CHECK(sel.value == brute.value);
    CHECK(sel.play == brute.play);
  }
}

TEST_CASE("decision points may sit on non-consecutive sequence positions") {
  // two rounds played at positions 0 and 2; position 1 is padding
  GameSpec g;
  g.rounds = 2;
  g.moves = 2;
  g.maximise = {true, true};
  g.read_indices = {0, 2};
  g.payoff = [](const std::vector<Nat>& play) {
    return std::int64_t(2 * play[1] + play[0]);
  };
  auto sol = ps_solve(g, Fuel{});
  CHECK(sol.value == 3);
  CHECK(sol.play == std::vector<Nat>{1, 1});
  CHECK(oracle_solve(g) == sol);
}

TEST_CASE("the fixed-point equations hold at every payoff position") {
  for (Nat seed = 0; seed < 25; ++seed) {
    auto g = rand_game(seed, 1 + seed % 3, 2);
    auto w = check_equations(g, Fuel{});
    CAPTURE(seed);
    CHECK(w.valid());
    CHECK(w.checks.size() == g.reads().size());
    // the committed play is the oracle's play at the read positions
    auto brute = oracle_solve(g);
    for (const auto& [n, v] : w.alpha) CHECK(v == Elem(brute.play.at(n)));
  }
}

TEST_CASE("the equations also hold over a non-consecutive dependency order") {
  // evens before odds; the payoff reads 0,2 (early block) then 1,3
  auto oo = builtin_relation("omega_plus_omega", 12);
  auto succ = succ_of(oo);
  GameSpec g;
  g.rounds = 4;
  g.moves = 2;
  g.maximise = {true, false, true, false};
  g.read_indices = {0, 2, 1, 3};
  g.payoff = [](const std::vector<Nat>& play) {
    return std::int64_t(play[0] * 8 + play[2] * 4 + play[1] * 2 + play[3]) - 7;
  };
  auto w = check_equations(g, oo, succ, Fuel{});
  CHECK(w.valid());
  CHECK(w.checks.size() == 4);
}

TEST_CASE("oracle guard rejects huge tables") {
  GameSpec g;
  g.rounds = 40;
  g.moves = 3;
  g.maximise.assign(40, true);
  g.payoff = [](const std::vector<Nat>&) { return 0; };
  CHECK_THROWS_AS(oracle_solve(g), ConfigError);
}
