#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "barrec/elem.hpp"
#include "barrec/error.hpp"
#include "barrec/relation.hpp"
#include "barrec/trace.hpp"

namespace barrec {

// A partial sequence of naturals: a finite map index -> Elem.  Immutable
// value type; all edits return fresh sequences.
class PartialSeq {
 public:
  PartialSeq() = default;
  explicit PartialSeq(std::map<Nat, Elem> entries) : entries_(std::move(entries)) {}

  static PartialSeq of(std::initializer_list<std::pair<const Nat, Elem>> init) {
    return PartialSeq(std::map<Nat, Elem>(init));
  }

  bool defined(Nat n) const { return entries_.count(n) != 0; }

  std::optional<Elem> get(Nat n) const {
    auto it = entries_.find(n);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  // Only call on defined indices.
  Elem at(Nat n) const {
    auto it = entries_.find(n);
    if (it == entries_.end())
      throw ConfigError("partial sequence undefined at index " + std::to_string(n));
    return it->second;
  }

  const std::map<Nat, Elem>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<Nat> domain() const {
    std::vector<Nat> out;
    out.reserve(entries_.size());
    for (const auto& [k, _] : entries_) out.push_back(k);
    return out;
  }

  friend bool operator==(const PartialSeq& a, const PartialSeq& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::map<Nat, Elem> entries_;
};

// u (+) v: keeps u's entries where both are defined.
PartialSeq overwrite(const PartialSeq& u, const PartialSeq& v);

// u[n -> x], which by the overwrite convention leaves u unchanged when n is
// already defined.
PartialSeq update(const PartialSeq& u, Nat n, Elem x);

struct ExtendCheck {
  bool extends = false;
  bool strict = false;
};

// Does v agree with u on dom(u) and define at least as much?
ExtendCheck extends(const PartialSeq& u, const PartialSeq& v);

// The finite sequence s as the partial function {i < |s| -> s(i)}.
PartialSeq fin_embed(std::span<const Elem> s);
PartialSeq fin_embed(const std::vector<Elem>& s);

// The entries of u strictly below n (the `<`-initial segment).
PartialSeq truncate_lt(const PartialSeq& u, Nat n);

// Is dom(u) closed under R-predecessors on R's fragment?
bool is_closed(const PartialSeq& u, const Relation& r);

// A total view of a partial sequence: base entries win, everything else is
// computed on demand by a filler, memoised, and logged.  Copies share the
// interior state; a view belongs to a single evaluation task.
class TotalSeqView {
 public:
  using Filler = std::function<Elem(Nat)>;
  using SelfFiller = std::function<Elem(TotalSeqView&, Nat)>;

  TotalSeqView(PartialSeq base, Filler filler);
  static TotalSeqView with_self_filler(PartialSeq base, SelfFiller filler);

  // Forces index n.  First filler evaluation per index is memoised and
  // appended to the query log; base indices never invoke the filler.
  Elem at(Nat n);

  // Observes without forcing: base entry or memoised value, if any.
  std::optional<Elem> peek(Nat n) const;

  const PartialSeq& base() const;
  const std::vector<Nat>& query_log() const;
  Nat filler_calls() const;

  // 1 + max(query_log), the least pointwise continuity bound the log
  // justifies; 0 when nothing was filler-evaluated.
  Nat modulus() const;

  // Caps the number of filler evaluations; exceeding it raises a fuel error
  // carrying the offending index.
  void set_query_cap(Nat cap);
  void set_trace(Trace* trace);

  // Every (index, value) pair that exists concretely right now.
  std::vector<std::pair<Nat, Elem>> materialised() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
  explicit TotalSeqView(std::shared_ptr<State> s) : state_(std::move(s)) {}
};

TotalSeqView overwrite_total(const PartialSeq& u, TotalSeqView::Filler filler);

// s^: the finite sequence extended by the default element everywhere else.
TotalSeqView canon_ext(const std::vector<Elem>& s);

// Copies the R-predecessors of n out of a view, forcing them.
PartialSeq restrict_below(TotalSeqView& alpha, Nat n, const Relation& r);

// A sequence segment generalised to an order: body's domain is exactly the
// strict R-down-set of length_index.
struct GenSeq {
  Nat length_index = 0;
  PartialSeq body;

  friend bool operator==(const GenSeq& a, const GenSeq& b) {
    return a.length_index == b.length_index && a.body == b.body;
  }
};

// Validating constructor: rejects bodies that are not the exact down-set.
GenSeq make_genseq(Nat length_index, PartialSeq body, const Relation& tri);

// t * x: appends x at the old length index and advances the length to
// succ(length_index).  Rejects extensions whose body would not be closed.
GenSeq star_extend(const GenSeq& t, Elem x, const Relation& tri,
                   const std::function<Nat(Nat)>& succ);

}  // namespace barrec
