#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "barrec/orders.hpp"

using namespace barrec;

TEST_CASE("tree coding enumerates binary strings in length-lex order") {
  CHECK(tree_code(0).empty());
  CHECK(tree_code(1) == std::vector<bool>{false});
  CHECK(tree_code(2) == std::vector<bool>{true});
  CHECK(tree_code(3) == std::vector<bool>{false, false});
  CHECK(tree_code(4) == std::vector<bool>{false, true});
  CHECK(tree_code(6) == std::vector<bool>{true, true});
  CHECK(tree_is_proper_prefix(1, 4));
  CHECK_FALSE(tree_is_proper_prefix(2, 4));
  CHECK_FALSE(tree_is_proper_prefix(4, 4));

  auto tree = builtin_relation(BuiltinOrder::tree_prefix, 20);
  CHECK(tree.preds_of(4) == std::vector<Nat>{0, 1});
  CHECK(tree.preds_of(0).empty());
  CHECK(tree.preds_of(11) == std::vector<Nat>{0, 2, 5});  // "100": "", "1", "10"
}

TEST_CASE("the stock relations order the fragment as documented") {
  auto lt = builtin_relation("lt", 10);
  CHECK(lt.holds(3, 7));
  CHECK_FALSE(lt.holds(7, 3));
  CHECK(lt.preds_of(3) == std::vector<Nat>{0, 1, 2});

  auto none = builtin_relation("empty", 10);
  CHECK_FALSE(none.holds(0, 1));
  CHECK(none.preds_of(9).empty());
  // total: predecessor sets stay enumerable at any index
  CHECK(none.preds_of(1000000).empty());

  auto oo = builtin_relation("omega_plus_omega", 12);
  CHECK(oo.holds(0, 2));       // evens in usual order
  CHECK(oo.holds(2, 1));       // every even below every odd
  CHECK(oo.holds(1, 3));       // odds in usual order
  CHECK_FALSE(oo.holds(1, 2));
  CHECK_FALSE(oo.holds(3, 1));
  CHECK(oo.preds_of(5) == std::vector<Nat>{0, 1, 2, 3, 4, 6, 8, 10, 12});

  CHECK_THROWS_AS(builtin_relation("nonsense", 10), ConfigError);
}

TEST_CASE("well-foundedness and transitivity hold for the stock orders") {
  for (auto which : {BuiltinOrder::empty, BuiltinOrder::lt, BuiltinOrder::tree_prefix,
                     BuiltinOrder::omega_plus_omega}) {
    auto r = builtin_relation(which, 24);
    CHECK(is_well_founded_upto(r, 24));
    CHECK(is_transitive_upto(r, 24));
  }
  CHECK_FALSE(is_well_founded_upto(builtin_relation("cycle_pair", 10), 10));
}

TEST_CASE("successor picks the least strict upper bound in the order") {
  auto slt = succ_of(builtin_relation("lt", 10));
  CHECK(slt(0) == 1);
  CHECK(slt(4) == 5);

  auto soo = succ_of(builtin_relation("omega_plus_omega", 10));
  CHECK(soo(0) == 2);
  CHECK(soo(2) == 4);
  CHECK(soo(1) == 3);  // odd successors stay odd

  auto stree = succ_of(builtin_relation("tree_prefix", 14));
  CHECK(stree(0) == 1);
  CHECK(stree(1) == 3);
  CHECK(stree(2) == 5);

  // at the top of the fragment there is nothing above
  CHECK_THROWS_AS(succ_of(builtin_relation("lt", 3))(3), BoundError);
}

TEST_CASE("stock update-point maps") {
  auto u = PartialSeq::of({{0, Elem(1)}, {2, Elem(1)}});
  CHECK(m_identity(5, u) == 5);
  CHECK(m_least_undefined(5, u) == 1);
  CHECK(m_least_undefined(5, PartialSeq{}) == 0);
  CHECK(m_min_dom(5, u) == 0);
  CHECK(m_min_dom(5, PartialSeq{}) == 5);  // nothing to sabotage with yet

  // path of 11 is "100": indices 0 ("") , 2 ("1"), 5 ("10"), 11 itself
  CHECK(m_tree_least_prefix(11, PartialSeq{}) == 0);
  CHECK(m_tree_least_prefix(11, u) == 5);
  auto full = PartialSeq::of({{0, Elem(1)}, {2, Elem(1)}, {5, Elem(1)}, {11, Elem(1)}});
  CHECK(m_tree_least_prefix(11, full) == 11);
}

TEST_CASE("named bundles wire the documented triples") {
  auto ps = named_bundle("ps", 10);
  CHECK(ps.triangle.holds(1, 2));
  CHECK(ps.prec(PartialSeq{}).holds(1, 2));
  CHECK(ps.m(7, PartialSeq{}) == 7);

  auto mbr1 = named_bundle("mbr1", 10);
  CHECK(mbr1.triangle.holds(1, 2));
  CHECK_FALSE(mbr1.prec(PartialSeq{}).holds(1, 2));
  CHECK(mbr1.m(7, PartialSeq{}) == 0);

  auto bbc = named_bundle("bbc", 10);
  CHECK_FALSE(bbc.triangle.holds(1, 2));
  CHECK(bbc.m(7, PartialSeq{}) == 7);

  CHECK_THROWS_AS(named_bundle("nope", 10), ConfigError);

  auto custom = make_bundle("tree_prefix", "empty", "least_undefined", 10);
  CHECK(custom.triangle.holds(1, 4));
  CHECK(custom.m(4, PartialSeq{}) == 0);
  CHECK_THROWS_AS(make_bundle("lt", "lt", "garbage", 10), ConfigError);
}

TEST_CASE("the union order includes prec, triangle, and the update point's cone") {
  auto b = named_bundle("mbr1", 10);  // triangle=lt, prec=empty, m=least_undefined
  auto pp = prec_prime(PartialSeq{}, b, 10);
  CHECK(pp.holds(1, 4));        // triangle
  CHECK(pp.holds(0, 4));        // triangle into m(4,{}) = 0 is vacuous here, lt covers it
  CHECK_FALSE(pp.holds(4, 1));

  // with an empty triangle the cone through m still shows up
  auto tri0 = make_bundle("empty", "lt", "identity", 10);
  auto pp0 = prec_prime(PartialSeq{}, tri0, 10);
  CHECK(pp0.holds(1, 4));
  CHECK_FALSE(pp0.holds(4, 4));
}

TEST_CASE("all six stock bundles validate on the standard samples") {
  for (const auto* name : {"bbc", "mbr_simple", "mbr1", "ps_simple", "ps", "tree"}) {
    auto rep = validate_bundle(named_bundle(name, 10), 10, 7);
    INFO("bundle ", name);
    CHECK(rep.all_pass());
    CHECK(rep.checked_bound == 10);
    CHECK(rep.sampled_us >= 17);
  }
}

TEST_CASE("sabotaged bundles fail with concrete witnesses") {
  // update point inside dom(u): freshness breaks
  auto bad_m = make_bundle("lt", "empty", "min_dom", 10);
  auto rep1 = validate_bundle(bad_m, 10, 7);
  CHECK_FALSE(rep1.all_pass());
  CHECK_FALSE(rep1.cond_ii.pass);
  REQUIRE(rep1.cond_ii.witness.has_value());
  CHECK_FALSE(rep1.cond_ii.witness->u.empty());

  // a cyclic recursion order: the union order is no longer well-founded
  auto bad_prec = named_bundle("bbc", 10);
  bad_prec.prec = [](const PartialSeq&) { return builtin_relation("cycle_pair", 10); };
  auto rep2 = validate_bundle(bad_prec, 10, 7);
  CHECK_FALSE(rep2.cond_i.pass);

  // identity update point with a nontrivial triangle: the stepped state skips
  // the down-set, so closedness breaks
  auto bad_closed = make_bundle("lt", "empty", "identity", 10);
  auto rep3 = validate_bundle(bad_closed, 10, 7);
  CHECK_FALSE(rep3.cond_iii.pass);
  REQUIRE(rep3.cond_iii.witness.has_value());
  CHECK(rep3.cond_iii.witness->n == 1);
}

TEST_CASE("standard samples are triangle-closed and include the empty state") {
  auto b = named_bundle("tree", 12);
  auto us = standard_samples(b, 12, 3);
  REQUIRE(!us.empty());
  CHECK(us.front().empty());
  for (const auto& u : us) CHECK(is_closed(u, b.triangle));
  // two-element alphabet prefixes up to length 4: 2+4+8+16 of them + empty + 16 random
  CHECK(us.size() == 1 + 30 + 16);
}
