#include "barrec/partials.hpp"

#include <algorithm>
#include <set>

namespace barrec {

PartialSeq overwrite(const PartialSeq& u, const PartialSeq& v) {
  auto merged = u.entries();
  // map::insert keeps existing keys, which is exactly the left bias we want
  merged.insert(v.entries().begin(), v.entries().end());
  return PartialSeq(std::move(merged));
}

PartialSeq update(const PartialSeq& u, Nat n, Elem x) {
  auto merged = u.entries();
  merged.emplace(n, x);
  return PartialSeq(std::move(merged));
}

ExtendCheck extends(const PartialSeq& u, const PartialSeq& v) {
  for (const auto& [k, x] : u.entries()) {
    auto w = v.get(k);
    if (!w || !(*w == x)) return {false, false};
  }
  return {true, v.size() > u.size()};
}

PartialSeq fin_embed(std::span<const Elem> s) {
  std::map<Nat, Elem> m;
  for (Nat i = 0; i < s.size(); ++i) m.emplace(i, s[i]);
  return PartialSeq(std::move(m));
}

PartialSeq fin_embed(const std::vector<Elem>& s) { return fin_embed(std::span<const Elem>(s)); }

PartialSeq truncate_lt(const PartialSeq& u, Nat n) {
  std::map<Nat, Elem> m;
  for (const auto& [k, x] : u.entries()) {
    if (k >= n) break;
    m.emplace(k, x);
  }
  return PartialSeq(std::move(m));
}

bool is_closed(const PartialSeq& u, const Relation& r) {
  for (const auto& [n, _] : u.entries())
    for (Nat j : r.preds_of(n))
      if (!u.defined(j)) return false;
  return true;
}

struct TotalSeqView::State {
  PartialSeq base;
  SelfFiller filler;
  std::map<Nat, Elem> memo;
  std::vector<Nat> log;
  Nat query_cap = 0;  // 0: uncapped
  Trace* trace = nullptr;
};

TotalSeqView::TotalSeqView(PartialSeq base, Filler filler)
    : state_(std::make_shared<State>()) {
  state_->base = std::move(base);
  state_->filler = [f = std::move(filler)](TotalSeqView&, Nat n) { return f(n); };
}

TotalSeqView TotalSeqView::with_self_filler(PartialSeq base, SelfFiller filler) {
  auto st = std::make_shared<State>();
  st->base = std::move(base);
  st->filler = std::move(filler);
  return TotalSeqView(std::move(st));
}

Elem TotalSeqView::at(Nat n) {
  State& st = *state_;
  if (auto v = st.base.get(n)) return *v;
  if (auto it = st.memo.find(n); it != st.memo.end()) return it->second;
  if (st.query_cap != 0 && st.log.size() >= st.query_cap)
    throw FuelError(FuelError::Cap::queries,
                    "query cap " + std::to_string(st.query_cap) + " exhausted at index " +
                        std::to_string(n),
                    0, st.base.size(), n);
  TotalSeqView self(state_);
  Elem v = st.filler(self, n);
  // the filler may have settled n itself on a re-entrant path; first value wins
  auto [it, fresh] = st.memo.emplace(n, v);
  if (fresh) {
    st.log.push_back(n);
    if (st.trace) {
      auto& ev = st.trace->emit(EventKind::q_query);
      ev.u_dom = st.base.domain();
      ev.index = n;
      ev.value = it->second;
    }
  }
  return it->second;
}

std::optional<Elem> TotalSeqView::peek(Nat n) const {
  const State& st = *state_;
  if (auto v = st.base.get(n)) return v;
  if (auto it = st.memo.find(n); it != st.memo.end()) return it->second;
  return std::nullopt;
}

const PartialSeq& TotalSeqView::base() const { return state_->base; }
const std::vector<Nat>& TotalSeqView::query_log() const { return state_->log; }
Nat TotalSeqView::filler_calls() const { return state_->log.size(); }

Nat TotalSeqView::modulus() const {
  const auto& log = state_->log;
  if (log.empty()) return 0;
  return *std::max_element(log.begin(), log.end()) + 1;
}

void TotalSeqView::set_query_cap(Nat cap) { state_->query_cap = cap; }
void TotalSeqView::set_trace(Trace* trace) { state_->trace = trace; }

std::vector<std::pair<Nat, Elem>> TotalSeqView::materialised() const {
  std::vector<std::pair<Nat, Elem>> out;
  const State& st = *state_;
  for (const auto& [k, v] : st.base.entries()) out.emplace_back(k, v);
  for (const auto& [k, v] : st.memo)
    if (!st.base.defined(k)) out.emplace_back(k, v);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

TotalSeqView overwrite_total(const PartialSeq& u, TotalSeqView::Filler filler) {
  return TotalSeqView(u, std::move(filler));
}

TotalSeqView canon_ext(const std::vector<Elem>& s) {
  return TotalSeqView(fin_embed(s), [](Nat) { return kDefault; });
}

PartialSeq restrict_below(TotalSeqView& alpha, Nat n, const Relation& r) {
  std::map<Nat, Elem> m;
  for (Nat k : r.preds_of(n)) m.emplace(k, alpha.at(k));
  return PartialSeq(std::move(m));
}

GenSeq make_genseq(Nat length_index, PartialSeq body, const Relation& tri) {
  auto expected = tri.preds_of(length_index);
  auto actual = body.domain();
  if (expected != actual)
    throw ClosednessError("segment body at length index " + std::to_string(length_index) +
                          " is not the exact '" + tri.name + "' down-set");
  return GenSeq{length_index, std::move(body)};
}

GenSeq star_extend(const GenSeq& t, Elem x, const Relation& tri,
                   const std::function<Nat(Nat)>& succ) {
  Nat len = succ(t.length_index);
  if (t.body.defined(t.length_index))
    throw ClosednessError("segment already defined at its own length index " +
                          std::to_string(t.length_index));
  return make_genseq(len, update(t.body, t.length_index, x), tri);
}

}  // namespace barrec
