#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "barrec/psi.hpp"

#include "helpers.hpp"

using namespace barrec;
using namespace barrec::testing;

namespace {

// Small hand-traceable instruments shared below.
EpsSimple probing_eps() {
  return EpsSimple{[](Nat, Nat n, const PFun& p) {
    return Elem(p(Elem(n + 1)) % 7 + n);
  }};
}

QFun two_point_q() {
  return QFun{[](TotalSeqView& a) { return 10 * a.at(0).value() + a.at(1).value(); }};
}

EpsDep dep_of(const EpsSimple& e) {
  return EpsDep{[e](const GenSeqView& s, const GenSeqView& r, const PFun& p) {
    return e.call(s.length_index(), r.length_index(), p);
  }};
}

}  // namespace

TEST_CASE("single-point updates, nothing forgotten: hand-traced answer") {
  // eps answers p(n+1) mod 7 plus n; q reads positions 0 and 1.
  // alpha(0): p(1) -> child {0->1} whose own alpha(1) settles to 6, q = 16,
  // so alpha(0) = 16 mod 7 = 2; alpha(1) settles to 4 the same way; q = 24.
  auto b = named_bundle("bbc", 16);
  CHECK(psi_simple(probing_eps(), two_point_q(), b, PartialSeq{}, Fuel{}) == 24);
}

TEST_CASE("keeping the initial segment changes the answer: hand-traced") {
  // Same instruments, but recursive calls carry the settled segment below n,
  // so the second challenge sees alpha(0) = 2 instead of the default: q = 22.
  auto b = named_bundle("ps_simple", 16);
  CHECK(psi_simple(probing_eps(), two_point_q(), b, PartialSeq{}, Fuel{}) == 22);
}

TEST_CASE("base entries are answered without consulting the selection function") {
  auto b = named_bundle("ps_simple", 16);
  auto u = PartialSeq::of({{0, Elem(3)}});
  // alpha(0) = 3 from the base; the challenge at 1 sees {0->3, 1->2}, q = 32,
  // eps answers 32 mod 7 + 1 = 5; root q = 35.
  CHECK(psi_simple(probing_eps(), two_point_q(), b, u, Fuel{}) == 35);
}

TEST_CASE("the dependent form collapses to the simple form on its indices") {
  for (Nat seed = 0; seed < 40; ++seed) {
    auto eps = rand_eps_simple(seed);
    auto q = rand_q(seed, 6);
    for (const auto* name : {"bbc", "mbr_simple", "ps_simple", "ps", "tree"}) {
      auto b = named_bundle(name, 32);
      CAPTURE(seed);
      CAPTURE(name);
      CHECK(psi_dep(dep_of(eps), q, b, PartialSeq{}, Fuel{}) ==
            psi_simple(eps, q, b, PartialSeq{}, Fuel{}));
    }
  }
}

TEST_CASE("the sequence form answers q exactly like the flat form") {
  for (Nat seed = 0; seed < 25; ++seed) {
    auto eps = rand_eps(seed);
    auto q = rand_q(seed + 1000, 6);
    for (const auto* name : {"bbc", "mbr1", "ps", "tree"}) {
      auto b = named_bundle(name, 32);
      Tau flat = psi_dep(eps, q, b, PartialSeq{}, Fuel{});
      auto view = psi_tilde(eps, q, b, PartialSeq{}, Fuel{});
      CAPTURE(seed);
      CAPTURE(name);
      CHECK(q.call(view) == flat);
    }
  }
}

TEST_CASE("single-point instantiation matches the recursor it specialises") {
  for (Nat seed = 0; seed < 30; ++seed) {
    auto eps = rand_eps_simple(seed);
    auto q = rand_q(seed + 7, 6);
    auto b = named_bundle("bbc", 32);
    CAPTURE(seed);
    CHECK(bbc(eps, q, m_identity, PartialSeq{}, Fuel{}) ==
          psi_simple(eps, q, b, PartialSeq{}, Fuel{}));
  }
}

TEST_CASE("append-only instantiation matches the least-undefined bundle") {
  for (Nat seed = 0; seed < 30; ++seed) {
    auto eps = rand_eps(seed);
    auto q = rand_q(seed + 13, 6);
    auto b = named_bundle("mbr1", 32);
    std::vector<Elem> s;
    for (Nat i = 0; i < seed % 3; ++i) s.push_back(Elem(seed % 5));
    CAPTURE(seed);
    CHECK(mbr1(eps, q, s, Fuel{}) == psi_dep(eps, q, b, fin_embed(s), Fuel{}));
  }
}

TEST_CASE("down-set product matches the sequence form over the total order") {
  auto lt = builtin_relation("lt", 32);
  auto succ = succ_of(lt);
  for (Nat seed = 0; seed < 25; ++seed) {
    auto eps = rand_eps(seed);
    auto q = rand_q(seed + 31, 6);
    auto b = named_bundle("ps", 32);
    auto played = ps(eps, q, lt, succ, GenSeq{}, Fuel{});
    auto tilde = psi_tilde(eps, q, b, PartialSeq{}, Fuel{});
    Tau want = psi_dep(eps, q, b, PartialSeq{}, Fuel{});
    CAPTURE(seed);
    CHECK(q.call(played) == want);
    CHECK(q.call(tilde) == want);
    for (Nat k = 0; k < 6; ++k) CHECK(played.at(k) == tilde.at(k));
  }
}

TEST_CASE("the product rejects bodies that are not exact down-sets") {
  auto lt = builtin_relation("lt", 16);
  auto succ = succ_of(lt);
  auto eps = rand_eps(0);
  auto q = rand_q(0, 4);
  CHECK_THROWS_AS(ps(eps, q, lt, succ, GenSeq{2, PartialSeq::of({{0, Elem(1)}})}, Fuel{}),
                  ClosednessError);
}

TEST_CASE("a stale update point raises the side-condition error with its witness") {
  auto bad = make_bundle("lt", "empty", "min_dom", 16);
  auto u = PartialSeq::of({{2, Elem(5)}});
  auto q = QFun{[](TotalSeqView& a) { return Tau(a.at(0).value()); }};
  auto eps = EpsSimple{[](Nat, Nat, const PFun&) { return Elem(1); }};
  try {
    psi_simple(eps, q, bad, u, Fuel{});
    FAIL("expected the freshness condition to fire");
  } catch (const ConditionError& e) {
    CHECK(e.n == 0);
    CHECK(e.m == 2);
    CHECK(e.u_dom == std::vector<Nat>{2});
  }
}

TEST_CASE("a cyclic recursion order is reported with the offending path") {
  auto b = named_bundle("bbc", 16);
  b.prec = [](const PartialSeq&) { return builtin_relation("cycle_pair", 16); };
  auto eps = EpsSimple{[](Nat, Nat, const PFun& p) { return Elem(p(Elem(1)) % 5); }};
  auto q = QFun{[](TotalSeqView& a) { return Tau(a.at(0).value()); }};
  try {
    psi_simple(eps, q, b, PartialSeq{}, Fuel{});
    FAIL("expected a cycle");
  } catch (const CycleError& e) {
    CHECK(e.path == std::vector<Nat>{0, 1, 0});
  }
}

TEST_CASE("an outcome functional that scans forever hits the query cap") {
  auto b = named_bundle("bbc", 16);
  auto eps = EpsSimple{[](Nat, Nat, const PFun&) { return Elem(1); }};
  QFun scan{[](TotalSeqView& a) -> Tau {
    for (Nat k = 0;; ++k)
      if (a.at(k) == kDefault) return k;
  }};
  Fuel f;
  f.max_queries = 50;
  try {
    psi_simple(eps, scan, b, PartialSeq{}, f);
    FAIL("expected fuel exhaustion");
  } catch (const FuelError& e) {
    CHECK(e.cap == FuelError::Cap::queries);
  }
}

TEST_CASE("runs leave a replayable event record") {
  Trace tr;
  PsiOptions opts;
  opts.trace = &tr;
  auto b = named_bundle("bbc", 16);
  psi_simple(probing_eps(), two_point_q(), b, PartialSeq{}, Fuel{}, opts);
  Nat eps_calls = 0, updates = 0, queries = 0;
  for (const auto& e : tr.events()) {
    if (e.kind == EventKind::eps_call) ++eps_calls;
    if (e.kind == EventKind::update_applied) ++updates;
    if (e.kind == EventKind::q_query) ++queries;
  }
  CHECK(eps_calls == 4);  // two challenges per level, hand-traced above
  CHECK(updates == 4);    // each consults p exactly once
  CHECK(queries > 0);
}

TEST_CASE("pair-valued evidence: single-point derived realizer") {
  // The classical evidence probes storing (0, 7); the probe's answer comes
  // back as the stored second component, so q reads 7.
  Phi1 phi = [](Nat, const PFun& p) { return p(pair_elem(kDefault, Elem(7))); };
  PostH h = [](Tau t) { return Nat(t); };
  QFun q{[](TotalSeqView& a) { return Tau(pair_second(a.at(0).value())); }};
  CHECK(bbc2(phi, h, q, PartialSeq{}, Fuel{}) == 7);

  // Evidence that never probes: the answer is h(phi(m)) at each point.
  Phi1 lazy = [](Nat m, const PFun&) { return Tau(m + 10); };
  QFun q2{[](TotalSeqView& a) {
    return Tau(pair_second(a.at(0).value()) * 100 + pair_second(a.at(2).value()));
  }};
  CHECK(bbc2(lazy, h, q2, PartialSeq{}, Fuel{}) == 1012);
}

TEST_CASE("pair-valued evidence: append-only derived realizer") {
  // Evidence that never probes: every undefined position is answered at the
  // current stage, so both reads see h(phi(0)) = 5 and q = 55.
  Phi1 phi = [](Nat n, const PFun&) { return Tau(n + 5); };
  PostH h = [](Tau t) { return Nat(t); };
  QFun q{[](TotalSeqView& a) {
    return Tau(pair_second(a.at(1).value()) * 10 + pair_second(a.at(0).value()));
  }};
  CHECK(mbr2(phi, h, q, {}, Fuel{}) == 55);

  // Probing evidence advances the stage: the probe at stage 0 stores (0,5),
  // the child's probe at stage 1 stores (0,6), and the innermost read of
  // position 1 finds it, so 6 rides all the way back out.
  Phi1 probing = [](Nat n, const PFun& p) { return p(pair_elem(kDefault, Elem(n + 5))); };
  QFun q1{[](TotalSeqView& a) { return Tau(pair_second(a.at(1).value())); }};
  CHECK(mbr2(probing, h, q1, {}, Fuel{}) == 6);
}

TEST_CASE("evidence consulting the previous witness component") {
  // phi(n, y) = 10 y + n with seed witness 9; at stage 0 every undefined
  // position stores (0, 90).  The wrapped outcome shifts first components
  // right by the seed, so beta(0) = (9, 90), beta(1) = (0, 90): 90*100+9.
  Phi2 phi = [](Nat n, Nat y, const PFun&) { return Tau(10 * y + n); };
  PostH h = [](Tau t) { return Nat(t); };
  QFun y{[](TotalSeqView& beta) {
    return Tau(pair_second(beta.at(1).value()) * 100 + pair_first(beta.at(0).value()));
  }};
  CHECK(mbr3(phi, h, y, 9, {}, Fuel{}) == 9009);

  // from a nonempty start the previous witness component is read for real
  std::vector<Elem> s{pair_elem(Elem(3), Elem(1))};
  QFun y1{[](TotalSeqView& beta) { return Tau(pair_second(beta.at(1).value())); }};
  // stage 1: y = first(s(0)) = 3, so position 1 stores (0, 31)
  CHECK(mbr3(phi, h, y1, 9, s, Fuel{}) == 31);
}

TEST_CASE("evidence consulting all previous witnesses plus the shifted realizer") {
  // phi(firsts, b) = 10 b + |firsts| seeded with b = 4: at stage 0 every
  // position stores (0, 40).  The wrapped outcome shifts second components
  // right by the seed, so beta(1) = (0, second(a(0))) = (0, 40).
  Phi3 phi = [](const std::vector<Nat>& firsts, Nat b, const PFun&) {
    return Tau(10 * b + firsts.size());
  };
  PostH h = [](Tau t) { return Nat(t); };
  QFun y{[](TotalSeqView& beta) {
    return Tau(pair_second(beta.at(1).value()) + 1000 * pair_first(beta.at(1).value()));
  }};
  CHECK(mbr4(4, phi, h, y, {}, Fuel{}) == 40);
}
