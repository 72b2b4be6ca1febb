#pragma once

#include <functional>
#include <string>
#include <vector>

#include "barrec/elem.hpp"
#include "barrec/error.hpp"

namespace barrec {

// A decidable binary relation on naturals together with the fragment bound
// on which predecessor enumeration is trusted.  holds may be consulted for
// any arguments; preds_of only below the bound.
struct Relation {
  std::string name = "custom";
  Nat bound = 0;
  std::function<bool(Nat, Nat)> holds;
  std::function<std::vector<Nat>(Nat)> preds;  // sorted {j <= bound : holds(j,n)}

  std::vector<Nat> preds_of(Nat n) const {
    if (n > bound)
      throw BoundError("relation '" + name + "' cannot enumerate predecessors of " +
                       std::to_string(n) + " (fragment bound " + std::to_string(bound) + ")");
    return preds(n);
  }
};

// Builds a relation whose predecessor enumeration scans the fragment, which
// keeps preds consistent with holds by construction.
inline Relation make_relation(std::string name, Nat bound, std::function<bool(Nat, Nat)> holds) {
  Relation r;
  r.name = std::move(name);
  r.bound = bound;
  r.holds = holds;
  r.preds = [holds, bound](Nat n) {
    std::vector<Nat> out;
    for (Nat j = 0; j <= bound; ++j)
      if (holds(j, n)) out.push_back(j);
    return out;
  };
  return r;
}

}  // namespace barrec
