#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "barrec/partials.hpp"
#include "barrec/relation.hpp"

namespace barrec {

enum class BuiltinOrder { empty, lt, tree_prefix, omega_plus_omega };

// The stock orders, restricted to [0, bound]:
//   empty            nothing below anything
//   lt               the usual strict order on naturals
//   tree_prefix      m below n iff code(m) is a proper prefix of code(n),
//                    where code enumerates binary strings in length-lex order
//                    (code(0)="", code(1)="0", code(2)="1", code(3)="00", ...)
//   omega_plus_omega evens in usual order, then all evens below every odd,
//                    then odds in usual order (order type omega+omega)
Relation builtin_relation(BuiltinOrder which, Nat bound);
Relation builtin_relation(const std::string& name, Nat bound);

// The binary string coding behind tree_prefix.
std::vector<bool> tree_code(Nat n);
bool tree_is_proper_prefix(Nat m, Nat n);

// Acyclicity of the fragment digraph, the finite surrogate for
// well-foundedness checks.
bool is_well_founded_upto(const Relation& r, Nat n_max);
bool is_transitive_upto(const Relation& r, Nat n_max);

// The R-least index strictly above n within the fragment.
std::function<Nat(Nat)> succ_of(const Relation& r);

// Stock update-point choices.
Nat m_identity(Nat n, const PartialSeq& u);
Nat m_least_undefined(Nat n, const PartialSeq& u);
// Least index (in the tree_prefix coding order) on the code path of n that
// is still undefined in u; n itself when the whole path is settled.
Nat m_tree_least_prefix(Nat n, const PartialSeq& u);
// Deliberately broken: picks min dom(u), so the chosen point is never fresh.
Nat m_min_dom(Nat n, const PartialSeq& u);

// The parameter triple steering the recursor: a dependency order `triangle`,
// a state-indexed family of recursion orders `prec`, and the update-point
// map `m`.
struct ParamBundle {
  std::string name = "custom";
  Relation triangle;
  std::function<Relation(const PartialSeq&)> prec;
  std::function<Nat(Nat, const PartialSeq&)> m;
};

// Named bundles usable from configs:
//   bbc        (empty, empty, identity)
//   mbr_simple (empty, empty, least_undefined)
//   mbr1       (lt,    empty, least_undefined)
//   ps_simple  (empty, lt,    identity)
//   ps         (lt,    lt,    identity)
//   tree       (tree_prefix, empty, tree_least_prefix)
ParamBundle named_bundle(const std::string& name, Nat bound);
ParamBundle make_bundle(const std::string& triangle, const std::string& prec,
                        const std::string& m, Nat bound);

// k below n in the witnessing union order: k prec_u n, or k triangle n, or
// k triangle m(n,u).  This is the order the recursion actually descends.
Relation prec_prime(const PartialSeq& u, const ParamBundle& b, Nat n_max);

struct ConditionWitness {
  Nat n = 0;
  PartialSeq u;
  std::string note;
};

struct ConditionResult {
  bool pass = true;
  std::optional<ConditionWitness> witness;
};

struct ValidationReport {
  Nat checked_bound = 0;
  Nat sampled_us = 0;
  Nat seed = 0;
  ConditionResult cond_i;    // union order acyclic on the fragment
  ConditionResult cond_ii;   // update point fresh for every undefined n
  ConditionResult cond_iii;  // closed states stay closed under the recursion step

  bool all_pass() const { return cond_i.pass && cond_ii.pass && cond_iii.pass; }
};

// The prescribed sample family: the empty state, every finite-sequence
// embedding of length <= 4 over a two-element alphabet, and 16 random
// triangle-closed states drawn from `seed`.
std::vector<PartialSeq> standard_samples(const ParamBundle& b, Nat n_max, Nat seed);

ValidationReport validate_bundle(const ParamBundle& b, Nat n_max,
                                 const std::vector<PartialSeq>& us);
ValidationReport validate_bundle(const ParamBundle& b, Nat n_max, Nat seed);

}  // namespace barrec
