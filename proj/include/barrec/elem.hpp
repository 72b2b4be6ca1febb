#pragma once

#include <cstdint>
#include <functional>

namespace barrec {

// Indices into sequences are plain naturals; answers of recursions (the
// discrete result type) are too.  Sequence values get a thin wrapper so the
// two cannot be mixed up silently.
using Nat = std::uint64_t;
using Tau = Nat;

class Elem {
 public:
  constexpr Elem() = default;
  constexpr explicit Elem(Nat v) : value_(v) {}

  constexpr Nat value() const { return value_; }

  friend constexpr bool operator==(Elem a, Elem b) { return a.value_ == b.value_; }
  friend constexpr bool operator!=(Elem a, Elem b) { return a.value_ != b.value_; }
  friend constexpr bool operator<(Elem a, Elem b) { return a.value_ < b.value_; }

 private:
  Nat value_ = 0;
};

// The distinguished default element: what undefined positions display as and
// what guarded recursive calls return.
inline constexpr Elem kDefault{};

// Cantor pairing.  Used when sequence values carry a (witness, evidence)
// pair in a single Elem; pair_encode(0,0) == 0, so kDefault splits into
// (kDefault, kDefault).
constexpr Nat pair_encode(Nat a, Nat b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

constexpr Nat pair_first(Nat z) {
  // invert: find the diagonal s with s(s+1)/2 <= z < (s+1)(s+2)/2
  Nat s = 0;
  while ((s + 1) * (s + 2) / 2 <= z) ++s;
  Nat b = z - s * (s + 1) / 2;
  return s - b;
}

constexpr Nat pair_second(Nat z) {
  Nat s = 0;
  while ((s + 1) * (s + 2) / 2 <= z) ++s;
  return z - s * (s + 1) / 2;
}

inline Elem pair_elem(Elem a, Elem b) { return Elem(pair_encode(a.value(), b.value())); }
inline Elem elem_first(Elem z) { return Elem(pair_first(z.value())); }
inline Elem elem_second(Elem z) { return Elem(pair_second(z.value())); }

// Signed payoffs ride through the Nat-valued answer type zig-zag encoded.
constexpr Nat zigzag(std::int64_t v) {
  return v >= 0 ? static_cast<Nat>(v) * 2 : static_cast<Nat>(-(v + 1)) * 2 + 1;
}

constexpr std::int64_t unzigzag(Nat z) {
  return (z % 2 == 0) ? static_cast<std::int64_t>(z / 2)
                      : -static_cast<std::int64_t>(z / 2) - 1;
}

}  // namespace barrec
