#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "barrec/orders.hpp"
#include "barrec/partials.hpp"
#include "barrec/recursors.hpp"

namespace barrec {

// A lazily forced view of a generalised segment: the index set is known up
// front, values materialise only when read.  Selection functions that never
// inspect their segment arguments therefore never force them.
class GenSeqView {
 public:
  GenSeqView(Nat length_index, std::vector<Nat> indices, std::function<Elem(Nat)> fetch)
      : len_(length_index), indices_(std::move(indices)), fetch_(std::move(fetch)) {}

  Nat length_index() const { return len_; }
  const std::vector<Nat>& indices() const { return indices_; }

  Elem at(Nat k) const { return fetch_(k); }

  GenSeq materialize() const {
    std::map<Nat, Elem> body;
    for (Nat k : indices_) body.emplace(k, fetch_(k));
    return GenSeq{len_, PartialSeq(std::move(body))};
  }

  static GenSeqView of(const GenSeq& g) {
    auto body = g.body;
    return GenSeqView(g.length_index, body.domain(), [body](Nat k) { return body.at(k); });
  }

 private:
  Nat len_;
  std::vector<Nat> indices_;
  std::function<Elem(Nat)> fetch_;
};

using PFun = std::function<Tau(Elem)>;

// Selection function in the simple (order-free) form: consulted with the
// update point m, the challenged index n, and the continuation p.
struct EpsSimple {
  std::function<Elem(Nat m, Nat n, const PFun& p)> call;
};

// Dependent form: consulted with the segment s below the update point (full
// values) and the segment r of first components below the challenged index.
struct EpsDep {
  std::function<Elem(const GenSeqView& s, const GenSeqView& r, const PFun& p)> call;
};

// Outcome functional.
struct QFun {
  std::function<Tau(TotalSeqView&)> call;
};

struct PsiOptions {
  GuardPolicy guards = GuardPolicy::default_zero;
  Trace* trace = nullptr;
  // How to read the first component out of a stored Elem when assembling the
  // r segment.  Identity when values are unpaired; elem_first for genuinely
  // paired values.
  std::function<Elem(Elem)> first_proj;
};

// The parametrised recursor, simple form: answers q on the canonical
// extension of u whose filler consults eps, recursing on
// u (+) (prec_u-segment of alpha below n)[m(n,u) -> x].
Tau psi_simple(const EpsSimple& eps, const QFun& q, const ParamBundle& b, const PartialSeq& u,
               const Fuel& fuel, const PsiOptions& opts = {});

// Dependent form: eps additionally receives the triangle-segments of the
// current approximation at m(n,u) and n, assembled eagerly.
Tau psi_dep(const EpsDep& eps, const QFun& q, const ParamBundle& b, const PartialSeq& u,
            const Fuel& fuel, const PsiOptions& opts = {});

// The sequence form: returns the approximation itself, with q applied only
// inside the recursive calls.  Forcing the result drives the recursion.
TotalSeqView psi_tilde(const EpsDep& eps, const QFun& q, const ParamBundle& b,
                       const PartialSeq& u, const Fuel& fuel, const PsiOptions& opts = {});

// --- stock instantiations ------------------------------------------------

// BBC-style: recursive calls update a single point, nothing is forgotten.
Tau bbc(const EpsSimple& eps, const QFun& q, const std::function<Nat(Nat, const PartialSeq&)>& m,
        const PartialSeq& u, const Fuel& fuel, const PsiOptions& opts = {});

// Modified bar recursion: states are finite sequences, recursive calls
// append one element.
Tau mbr1(const EpsDep& eps, const QFun& q, const std::vector<Elem>& s, const Fuel& fuel,
         const PsiOptions& opts = {});

// Product of selection functions over a total order: returns the played
// sequence; recursive calls keep exactly the down-set of the refuted index.
TotalSeqView ps(const EpsDep& eps, const QFun& q, const Relation& tri,
                const std::function<Nat(Nat)>& succ, const GenSeq& s, const Fuel& fuel,
                const PsiOptions& opts = {});

// --- derived realizers (negative translation shapes) ----------------------

// phi(m, p): the classical evidence consulted per index; h maps its answer
// into the second component of the stored pair.
using Phi1 = std::function<Tau(Nat, const PFun&)>;
using PostH = std::function<Nat(Tau)>;

EpsSimple make_bbc2_eps(const Phi1& phi, const PostH& h);
Tau bbc2(const Phi1& phi, const PostH& h, const QFun& q, const PartialSeq& u, const Fuel& fuel,
         const PsiOptions& opts = {});

EpsDep make_mbr2_eps(const Phi1& phi, const PostH& h);
Tau mbr2(const Phi1& phi, const PostH& h, const QFun& q, const std::vector<Elem>& s,
         const Fuel& fuel, const PsiOptions& opts = {});

// phi(n, y, p) where y is the first component most recently realized.
using Phi2 = std::function<Tau(Nat, Nat, const PFun&)>;

EpsDep make_mbr3_eps(const Phi2& phi, const PostH& h, Nat x0);
QFun make_mbr3_q(const QFun& y, Nat x0);
Tau mbr3(const Phi2& phi, const PostH& h, const QFun& y, Nat x0, const std::vector<Elem>& s,
         const Fuel& fuel, const PsiOptions& opts = {});

// phi(s0, b, p): the first components so far plus the realizer b shifted in
// from the previous stage (a0 at the start).
using Phi3 = std::function<Tau(const std::vector<Nat>&, Nat, const PFun&)>;

EpsDep make_mbr4_eps(Nat a0, const Phi3& phi, const PostH& h);
QFun make_mbr4_q(Nat a0, const QFun& y);
Tau mbr4(Nat a0, const Phi3& phi, const PostH& h, const QFun& y, const std::vector<Elem>& s,
         const Fuel& fuel, const PsiOptions& opts = {});

}  // namespace barrec
