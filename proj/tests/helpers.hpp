#pragma once

// Seeded builders shared by the unit and acceptance suites.  Everything here
// is a pure function of its seed so failures replay exactly.

#include <functional>
#include <vector>

#include "barrec/choice.hpp"
#include "barrec/psi.hpp"
#include "barrec/recursors.hpp"
#include "barrec/script.hpp"

namespace barrec::testing {

inline Nat mix(Nat z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Nat mix2(Nat a, Nat b) { return mix(a * 0x9ddfea08eb382d69ULL + b); }

// An outcome functional that reads 2..4 fixed indices below `width` and
// combines them; continuous by construction.
inline QFun rand_q(Nat seed, Nat width) {
  std::vector<Nat> idx;
  Nat count = 2 + mix2(seed, 0) % 3;
  for (Nat i = 0; i < count; ++i) idx.push_back(mix2(seed, i + 1) % width);
  Nat c = 1 + mix2(seed, 9) % 7;
  return QFun{[idx, c](TotalSeqView& alpha) -> Tau {
    Tau acc = 0;
    for (Nat k : idx) acc = acc * 31 + alpha.at(k).value();
    return (acc + c) % 1000;
  }};
}

// A dependent selection function that may read one segment value and may
// probe the continuation once or twice; answers stay below 100 so values
// cannot run away.
inline EpsDep rand_eps(Nat seed) {
  return EpsDep{[seed](const GenSeqView& s, const GenSeqView& r, const PFun& p) -> Elem {
    Nat n = r.length_index();
    Nat h = mix2(seed, n);
    Nat acc = h % 50;
    if (h & 1) {
      const auto& ri = r.indices();
      if (!ri.empty()) acc += r.at(ri[h % ri.size()]).value();
    }
    if ((h >> 1) & 1) {
      const auto& si = s.indices();
      if (!si.empty()) acc += s.at(si[(h >> 2) % si.size()]).value();
    }
    if ((h >> 3) & 3) acc += p(Elem(h % 5)) % 17;
    if (((h >> 5) & 7) == 0) acc += p(Elem((h >> 3) % 5)) % 13;
    return Elem(acc % 100);
  }};
}

// The same shape without segment access, for the simple recursor form.
inline EpsSimple rand_eps_simple(Nat seed) {
  return EpsSimple{[seed](Nat m, Nat n, const PFun& p) -> Elem {
    Nat h = mix2(seed, n * 131 + m);
    Nat acc = h % 50;
    if ((h >> 3) & 3) acc += p(Elem(h % 5)) % 17;
    if (((h >> 5) & 7) == 0) acc += p(Elem((h >> 3) % 5)) % 13;
    return Elem(acc % 100);
  }};
}

// The first index >= h%width (cyclically) that u leaves undefined.
inline std::optional<Nat> fresh_index(const PartialSeq& u, Nat width, Nat h) {
  for (Nat i = 0; i < width; ++i) {
    Nat n = (h + i) % width;
    if (!u.defined(n)) return n;
  }
  return std::nullopt;
}

// A backward-recursion body that recurses while the state is small, through
// seed-chosen fresh update points; total because every call grows the domain.
inline BkBody rand_bk_body(Nat seed, Nat width, Nat size_cap) {
  return BkBody{[seed, width, size_cap](const PartialSeq& u, const BkCont& f) -> Tau {
    Nat h = mix2(seed, u.size() * 97 + (u.empty() ? 0 : u.entries().begin()->first));
    Tau acc = h % 23;
    for (const auto& [k, v] : u.entries()) acc = (acc * 7 + k + v.value()) % 100000;
    if (u.size() >= size_cap) return acc;
    Nat branches = 1 + (h >> 4) % 2;
    for (Nat i = 0; i < branches; ++i) {
      auto n = fresh_index(u, width, mix2(seed, h + i));
      if (!n) break;
      std::map<Nat, Elem> body;
      body.emplace(*n, Elem(mix2(seed, i + 3 * h) % 10));
      if ((h >> (6 + i)) & 1) {
        if (auto extra = fresh_index(u, width, mix2(seed, h + 17 * i)))
          body.emplace(*extra, Elem(mix2(seed, *extra) % 10));
      }
      acc = (acc * 13 + f(*n, PartialSeq(std::move(body)))) % 100000;
    }
    return acc;
  }};
}

inline std::vector<ScriptMove> section_script() {
  return {{1, Elem(7)}, {4, Elem(8)}, {3, Elem(9)}};
}

}  // namespace barrec::testing
