#pragma once

#include <functional>
#include <vector>

#include "barrec/partials.hpp"
#include "barrec/relation.hpp"
#include "barrec/trace.hpp"

namespace barrec {

// Resource caps shared by every recursor in the family.
struct Fuel {
  Nat max_depth = 10000;     // nested recursive calls
  Nat max_dom = 1000;        // entries in any partial state
  Nat max_queries = 100000;  // filler evaluations per view
};

// What a guarded call does when its side condition fails: silently yield the
// default answer (the mathematical reading) or raise, for debugging.
enum class GuardPolicy { default_zero, strict };

// Recursion over a well-founded relation: body(n, rec) may call rec(y) for
// any y, but only y R n actually recurses; anything else yields 0.
using WrRec = std::function<Tau(Nat)>;
using WrBody = std::function<Tau(Nat, const WrRec&)>;

Tau well_founded_rec(const Relation& r, const WrBody& body, Nat n,
                     Nat max_depth = Fuel{}.max_depth,
                     GuardPolicy policy = GuardPolicy::default_zero,
                     Trace* trace = nullptr);

// Backward recursion on extending partial states: the body receives u and a
// continuation f(n, v) that recurses on u (+) v provided n is genuinely new,
// i.e. n in dom(v) \ dom(u).
using BkCont = std::function<Tau(Nat, const PartialSeq&)>;
using BkBody = std::function<Tau(const PartialSeq&, const BkCont&)>;

Tau backward_rec(const BkBody& body, const PartialSeq& u, const Fuel& fuel,
                 GuardPolicy policy = GuardPolicy::default_zero, Trace* trace = nullptr);

// The open-recursion variant: the recursive call forgets everything at or
// above the call index before merging, i.e. recurses on [u](n) (+) v.
Tau open_rec(const BkBody& body, const PartialSeq& u, const Fuel& fuel,
             GuardPolicy policy = GuardPolicy::default_zero, Trace* trace = nullptr);

// m_{n,u,v}: the least index <= n in dom(v) \ dom(u), or n when there is
// none.  This is where the backward-to-open translation redirects calls.
Nat least_new_index(Nat n, const PartialSeq& u, const PartialSeq& v);

// Backward recursion reduced to open recursion through least_new_index;
// extensionally equal to backward_rec.
Tau backward_rec_via_open(const BkBody& body, const PartialSeq& u, const Fuel& fuel,
                          GuardPolicy policy = GuardPolicy::default_zero,
                          Trace* trace = nullptr);

// Update recursion: the body receives u and g(n, x) recursing on u[n -> x]
// for undefined n.
using UpCont = std::function<Tau(Nat, Elem)>;
using UpBody = std::function<Tau(const PartialSeq&, const UpCont&)>;

Tau update_rec(const UpBody& body, const PartialSeq& u, const Fuel& fuel,
               GuardPolicy policy = GuardPolicy::default_zero, Trace* trace = nullptr);

// Bar recursion on finite sequences: the body sees the canonical total
// extension of s and a continuation k(t) recursing on s (+) t for strictly
// longer t.
using BarCont = std::function<Tau(const std::vector<Elem>&)>;
using BarBody = std::function<Tau(TotalSeqView&, const BarCont&)>;

Tau bar_rec(const BarBody& body, const std::vector<Elem>& s, const Fuel& fuel,
            GuardPolicy policy = GuardPolicy::default_zero, Trace* trace = nullptr);

}  // namespace barrec
