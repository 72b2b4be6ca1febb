#include "barrec/orders.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "barrec/error.hpp"

namespace barrec {

std::vector<bool> tree_code(Nat n) {
  // enumerate binary strings in length-then-lex order: n+1 written in binary
  // with the leading 1 dropped
  Nat v = n + 1;
  std::vector<bool> bits;
  while (v > 1) {
    bits.push_back(v & 1);
    v >>= 1;
  }
  std::reverse(bits.begin(), bits.end());
  return bits;
}

namespace {

Nat tree_index(const std::vector<bool>& code) {
  Nat v = 1;
  for (bool b : code) v = v * 2 + (b ? 1 : 0);
  return v - 1;
}

}  // namespace

bool tree_is_proper_prefix(Nat m, Nat n) {
  auto cm = tree_code(m);
  auto cn = tree_code(n);
  if (cm.size() >= cn.size()) return false;
  return std::equal(cm.begin(), cm.end(), cn.begin());
}

Relation builtin_relation(BuiltinOrder which, Nat bound) {
  switch (which) {
    case BuiltinOrder::empty: {
      // trivially total: nothing is below anything, at any index
      Relation r;
      r.name = "empty";
      r.bound = ~Nat{0};
      r.holds = [](Nat, Nat) { return false; };
      r.preds = [](Nat) { return std::vector<Nat>{}; };
      (void)bound;
      return r;
    }
    case BuiltinOrder::lt:
      return make_relation("lt", bound, [](Nat a, Nat b) { return a < b; });
    case BuiltinOrder::tree_prefix:
      return make_relation("tree_prefix", bound,
                           [](Nat a, Nat b) { return tree_is_proper_prefix(a, b); });
    case BuiltinOrder::omega_plus_omega:
      return make_relation("omega_plus_omega", bound, [](Nat a, Nat b) {
        bool ea = a % 2 == 0, eb = b % 2 == 0;
        if (ea && !eb) return true;   // every even sits below every odd
        if (!ea && eb) return false;
        return a < b;                 // within a block, the usual order
      });
  }
  throw ConfigError("unknown builtin order");
}

Relation builtin_relation(const std::string& name, Nat bound) {
  if (name == "empty") return builtin_relation(BuiltinOrder::empty, bound);
  if (name == "lt") return builtin_relation(BuiltinOrder::lt, bound);
  if (name == "tree_prefix") return builtin_relation(BuiltinOrder::tree_prefix, bound);
  if (name == "omega_plus_omega")
    return builtin_relation(BuiltinOrder::omega_plus_omega, bound);
  if (name == "cycle_pair")
    // deliberately non-well-founded demo order: 0 and 1 sit below each other
    return make_relation("cycle_pair", bound, [](Nat a, Nat b) {
      return (a == 0 && b == 1) || (a == 1 && b == 0);
    });
  throw ConfigError("unknown order name '" + name + "'");
}

bool is_well_founded_upto(const Relation& r, Nat n_max) {
  if (n_max > r.bound)
    throw BoundError("well-foundedness check beyond fragment bound of '" + r.name + "'");
  // acyclicity of the edge set n -> j for j in preds(n), by iterative DFS
  enum { white, grey, black };
  std::vector<int> color(n_max + 1, white);
  for (Nat start = 0; start <= n_max; ++start) {
    if (color[start] != white) continue;
    std::vector<std::pair<Nat, Nat>> stack;  // (node, next pred position)
    stack.emplace_back(start, 0);
    color[start] = grey;
    while (!stack.empty()) {
      auto& [node, pos] = stack.back();
      auto ps = r.preds_of(node);
      bool advanced = false;
      while (pos < ps.size()) {
        Nat j = ps[pos++];
        if (j > n_max) continue;
        if (color[j] == grey) return false;
        if (color[j] == white) {
          color[j] = grey;
          stack.emplace_back(j, 0);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        color[node] = black;
        stack.pop_back();
      }
    }
  }
  return true;
}

bool is_transitive_upto(const Relation& r, Nat n_max) {
  for (Nat a = 0; a <= n_max; ++a)
    for (Nat b = 0; b <= n_max; ++b) {
      if (!r.holds(a, b)) continue;
      for (Nat c = 0; c <= n_max; ++c)
        if (r.holds(b, c) && !r.holds(a, c)) return false;
    }
  return true;
}

std::function<Nat(Nat)> succ_of(const Relation& r) {
  return [r](Nat n) -> Nat {
    bool have = false;
    Nat best = 0;
    for (Nat k = 0; k <= r.bound; ++k) {
      if (!r.holds(n, k)) continue;
      if (!have || r.holds(k, best)) {
        best = k;
        have = true;
      }
    }
    if (!have)
      throw BoundError("no successor of " + std::to_string(n) + " within bound of '" +
                       r.name + "'");
    return best;
  };
}

Nat m_identity(Nat n, const PartialSeq&) { return n; }

Nat m_least_undefined(Nat n, const PartialSeq& u) {
  for (Nat i = 0; i <= n; ++i)
    if (!u.defined(i)) return i;
  return n;
}

Nat m_tree_least_prefix(Nat n, const PartialSeq& u) {
  auto code = tree_code(n);
  // walk the path from the root: shorter codes have smaller indices
  for (std::size_t len = 0; len < code.size(); ++len) {
    Nat idx = tree_index(std::vector<bool>(code.begin(), code.begin() + len));
    if (!u.defined(idx)) return idx;
  }
  return n;
}

Nat m_min_dom(Nat n, const PartialSeq& u) {
  if (u.empty()) return n;
  return u.entries().begin()->first;
}

namespace {

std::function<Nat(Nat, const PartialSeq&)> named_m(const std::string& name) {
  if (name == "identity") return m_identity;
  if (name == "least_undefined") return m_least_undefined;
  if (name == "tree_least_prefix") return m_tree_least_prefix;
  if (name == "min_dom") return m_min_dom;
  throw ConfigError("unknown update-point map '" + name + "'");
}

}  // namespace

ParamBundle make_bundle(const std::string& triangle, const std::string& prec,
                        const std::string& m, Nat bound) {
  ParamBundle b;
  b.name = triangle + "/" + prec + "/" + m;
  b.triangle = builtin_relation(triangle, bound);
  Relation pr = builtin_relation(prec, bound);
  b.prec = [pr](const PartialSeq&) { return pr; };
  b.m = named_m(m);
  return b;
}

ParamBundle named_bundle(const std::string& name, Nat bound) {
  ParamBundle b;
  if (name == "bbc")
    b = make_bundle("empty", "empty", "identity", bound);
  else if (name == "mbr_simple")
    b = make_bundle("empty", "empty", "least_undefined", bound);
  else if (name == "mbr1")
    b = make_bundle("lt", "empty", "least_undefined", bound);
  else if (name == "ps_simple")
    b = make_bundle("empty", "lt", "identity", bound);
  else if (name == "ps")
    b = make_bundle("lt", "lt", "identity", bound);
  else if (name == "tree")
    b = make_bundle("tree_prefix", "empty", "tree_least_prefix", bound);
  else
    throw ConfigError("unknown bundle name '" + name + "'");
  b.name = name;
  return b;
}

Relation prec_prime(const PartialSeq& u, const ParamBundle& b, Nat n_max) {
  Relation prec_u = b.prec(u);
  Relation tri = b.triangle;
  auto m = b.m;
  return make_relation("prec_prime", n_max, [prec_u, tri, m, u](Nat k, Nat n) {
    return prec_u.holds(k, n) || tri.holds(k, n) || tri.holds(k, m(n, u));
  });
}

std::vector<PartialSeq> standard_samples(const ParamBundle& b, Nat n_max, Nat seed) {
  std::vector<PartialSeq> out;
  out.push_back(PartialSeq{});

  // every finite-sequence embedding of length 1..4 over {0,1}
  for (Nat len = 1; len <= 4; ++len) {
    for (Nat mask = 0; mask < (Nat(1) << len); ++mask) {
      std::vector<Elem> s;
      for (Nat i = 0; i < len; ++i) s.push_back(Elem((mask >> i) & 1));
      out.push_back(fin_embed(s));
    }
  }

  // 16 random triangle-closed states
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 16; ++t) {
    std::set<Nat> dom;
    Nat roots = 1 + rng() % 4;
    for (Nat i = 0; i < roots; ++i) {
      Nat n = rng() % (n_max + 1);
      dom.insert(n);
      for (Nat j : b.triangle.preds_of(n))
        if (j <= n_max) dom.insert(j);
    }
    // predecessors of predecessors, until stable
    for (bool grew = true; grew;) {
      grew = false;
      for (Nat n : std::set<Nat>(dom))
        for (Nat j : b.triangle.preds_of(n))
          if (j <= n_max && dom.insert(j).second) grew = true;
    }
    std::map<Nat, Elem> entries;
    for (Nat n : dom) entries.emplace(n, Elem(rng() % 4));
    out.push_back(PartialSeq(std::move(entries)));
  }
  return out;
}

namespace {

bool set_closed(const std::set<Nat>& s, const Relation& tri, Nat n_max) {
  for (Nat n : s)
    for (Nat j : tri.preds_of(n))
      if (j <= n_max && !s.count(j)) return false;
  return true;
}

}  // namespace

ValidationReport validate_bundle(const ParamBundle& b, Nat n_max,
                                 const std::vector<PartialSeq>& us) {
  if (!b.triangle.holds || !b.prec || !b.m)
    throw ConfigError("bundle '" + b.name + "' is missing a callable");
  if (n_max > b.triangle.bound)
    throw BoundError("validation fragment exceeds the bundle's relation bound");
  ValidationReport rep;
  rep.checked_bound = n_max;
  rep.sampled_us = us.size();

  // freshness of the update point
  for (const auto& u : us) {
    if (!rep.cond_ii.pass) break;
    Relation prec_u = b.prec(u);
    for (Nat n = 0; n <= n_max; ++n) {
      if (u.defined(n)) continue;
      Nat mm = b.m(n, u);
      if (u.defined(mm) || prec_u.holds(mm, n)) {
        rep.cond_ii = {false,
                       ConditionWitness{n, u,
                                        "update point " + std::to_string(mm) +
                                            " is not fresh for index " + std::to_string(n)}};
        break;
      }
    }
  }

  // acyclicity of the union order, on the samples and on the states the
  // recursion step would build from them
  auto check_i = [&](const PartialSeq& u) -> bool {
    return is_well_founded_upto(prec_prime(u, b, n_max), n_max);
  };
  for (const auto& u : us) {
    if (!rep.cond_i.pass) break;
    if (!check_i(u)) {
      rep.cond_i = {false, ConditionWitness{0, u, "union order has a cycle"}};
      break;
    }
    Relation prec_u = b.prec(u);
    for (Nat n = 0; n <= n_max && rep.cond_i.pass; ++n) {
      if (u.defined(n)) continue;
      PartialSeq ext = u;
      for (Nat k : prec_u.preds_of(n))
        if (k <= n_max) ext = update(ext, k, kDefault);
      ext = update(ext, b.m(n, u), kDefault);
      if (!check_i(ext))
        rep.cond_i = {false, ConditionWitness{n, ext, "union order has a cycle after the step at " +
                                                          std::to_string(n)}};
    }
  }

  // closedness preservation, on triangle-closed samples only
  for (const auto& u : us) {
    if (!rep.cond_iii.pass) break;
    bool in_bound = true;
    for (const auto& [n, _] : u.entries())
      if (n > b.triangle.bound) {
        in_bound = false;
        break;
      }
    if (!in_bound || !is_closed(u, b.triangle)) continue;
    Relation prec_u = b.prec(u);
    for (Nat n = 0; n <= n_max; ++n) {
      if (u.defined(n)) continue;
      std::set<Nat> s1;
      for (Nat k : u.domain()) s1.insert(k);
      for (Nat k : prec_u.preds_of(n))
        if (k <= n_max) s1.insert(k);
      std::set<Nat> s2 = s1;
      s2.insert(b.m(n, u));
      if (!set_closed(s1, b.triangle, n_max) || !set_closed(s2, b.triangle, n_max)) {
        rep.cond_iii = {false,
                        ConditionWitness{n, u, "recursion step at " + std::to_string(n) +
                                                   " leaves the closed family"}};
        break;
      }
    }
  }

  return rep;
}

ValidationReport validate_bundle(const ParamBundle& b, Nat n_max, Nat seed) {
  auto rep = validate_bundle(b, n_max, standard_samples(b, n_max, seed));
  rep.seed = seed;
  return rep;
}

}  // namespace barrec
