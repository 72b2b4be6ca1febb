#pragma once

#include <optional>
#include <string>
#include <vector>

#include "barrec/choice.hpp"
#include "barrec/games.hpp"
#include "barrec/orders.hpp"
#include "barrec/script.hpp"

namespace barrec {

// One scenario replayed under several parameter bundles.  Exactly one of the
// scenario fields is set.
struct ComparePlan {
  std::vector<std::string> bundles;  // named_bundle names
  Nat bound = 32;
  Fuel fuel;

  std::optional<std::vector<ScriptMove>> script;  // scripted-opponent run
  Nat width = 5;                                  // snapshot width for scripts

  std::optional<GameSpec> game;

  std::optional<PredFamily> family;  // realization with the witness style
};

struct VariantStats {
  std::string bundle;
  Tau answer = 0;
  bool valid = true;
  Nat psi_activations = 0;
  Nat eps_calls = 0;
  Nat q_queries = 0;
  Nat max_dom = 0;
  std::vector<std::vector<Elem>> snapshots;  // script scenarios only
};

struct CompareReport {
  std::vector<VariantStats> variants;  // sorted by bundle name
};

// Runs the scenario once per bundle (independent runs, fanned out
// concurrently) and merges the stats deterministically.
CompareReport compare_variants(const ComparePlan& plan);

}  // namespace barrec
