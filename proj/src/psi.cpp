#include "barrec/psi.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace barrec {

namespace {

std::function<Elem(Elem)> resolve_proj(const PsiOptions& opts) {
  if (opts.first_proj) return opts.first_proj;
  return [](Elem e) { return e; };
}

// re-entrancy bookkeeping for one approximation view
struct Aux {
  std::set<Nat> running;
  std::vector<Nat> stack;
};

struct StackGuard {
  Aux& aux;
  explicit StackGuard(Aux& a, Nat n) : aux(a) {
    if (aux.running.count(n)) {
      auto from = std::find(aux.stack.begin(), aux.stack.end(), n);
      std::vector<Nat> path(from, aux.stack.end());
      path.push_back(n);
      throw CycleError(std::move(path));
    }
    aux.running.insert(n);
    aux.stack.push_back(n);
  }
  ~StackGuard() {
    aux.running.erase(aux.stack.back());
    aux.stack.pop_back();
  }
};

void check_state_fuel(const PartialSeq& u, const Fuel& fuel, Nat depth) {
  if (depth >= fuel.max_depth)
    throw FuelError(FuelError::Cap::depth,
                    "recursion exceeded depth " + std::to_string(fuel.max_depth), depth,
                    u.size());
  if (u.size() > fuel.max_dom)
    throw FuelError(FuelError::Cap::dom,
                    "state exceeded " + std::to_string(fuel.max_dom) + " entries", depth,
                    u.size());
}

void require_fresh(const PartialSeq& u, const Relation& prec_u, Nat n, Nat mnu) {
  if (u.defined(mnu) || prec_u.holds(mnu, n))
    throw ConditionError(n, mnu, u.domain(),
                         "update point " + std::to_string(mnu) + " chosen for index " +
                             std::to_string(n) + " is not fresh");
}

void emit_eps_call(Trace* trace, const PartialSeq& u, Nat n, Nat mnu) {
  if (!trace) return;
  auto& ev = trace->emit(EventKind::eps_call);
  ev.u_dom = u.domain();
  ev.n = n;
  ev.m = mnu;
}

void emit_wr_step(Trace* trace, const PartialSeq& u, Nat n) {
  if (!trace) return;
  auto& ev = trace->emit(EventKind::wr_step);
  ev.u_dom = u.domain();
  ev.index = n;
}

// Shared parameters of one parametrised run.
struct PsiCtx {
  EpsSimple eps_s;  // exactly one of eps_s / eps_d is used
  EpsDep eps_d;
  bool dep = false;
  QFun q;
  ParamBundle b;
  Fuel fuel;
  PsiOptions opts;
  std::function<Elem(Elem)> proj;
};

// The canonical approximation over u.  `recurse(mnu, v)` performs the
// recursive call on u extended by v; what that means (plain answer or
// sequence-form) is the caller's business.
TotalSeqView make_alpha(const std::shared_ptr<PsiCtx>& ctx, const PartialSeq& u,
                        std::function<Tau(Nat, const PartialSeq&)> recurse) {
  Relation prec_u = ctx->b.prec(u);
  auto aux = std::make_shared<Aux>();
  auto filler = [ctx, u, prec_u, aux, recurse](TotalSeqView& self, Nat n) -> Elem {
    StackGuard guard(*aux, n);
    emit_wr_step(ctx->opts.trace, u, n);
    Nat mnu = ctx->b.m(n, u);
    require_fresh(u, prec_u, n, mnu);
    emit_eps_call(ctx->opts.trace, u, n, mnu);

    TotalSeqView sv = self;  // shares state; safe to keep in the closures below
    PFun p = [ctx, u, prec_u, n, mnu, sv, recurse](Elem x) mutable -> Tau {
      PartialSeq trunc = restrict_below(sv, n, prec_u);
      return recurse(mnu, update(trunc, mnu, x));
    };

    if (!ctx->dep) return ctx->eps_s.call(mnu, n, p);

    const Relation& tri = ctx->b.triangle;
    auto s_idx = tri.preds_of(mnu);
    auto r_idx = tri.preds_of(n);
    // assemble eagerly: the update point's segment first, then the index's
    for (Nat k : s_idx) self.at(k);
    for (Nat k : r_idx) self.at(k);
    GenSeqView s_view(mnu, s_idx, [sv](Nat k) mutable { return sv.at(k); });
    GenSeqView r_view(n, r_idx, [sv, proj = ctx->proj](Nat k) mutable { return proj(sv.at(k)); });
    return ctx->eps_d.call(s_view, r_view, p);
  };
  TotalSeqView view = TotalSeqView::with_self_filler(u, filler);
  view.set_query_cap(ctx->fuel.max_queries);
  view.set_trace(ctx->opts.trace);
  return view;
}

Tau run_flat(const std::shared_ptr<PsiCtx>& ctx, const PartialSeq& u0) {
  BkBody body = [ctx](const PartialSeq& u, const BkCont& f) -> Tau {
    TotalSeqView alpha = make_alpha(ctx, u, [&f](Nat mnu, const PartialSeq& v) {
      return f(mnu, v);
    });
    return ctx->q.call(alpha);
  };
  return backward_rec(body, u0, ctx->fuel, ctx->opts.guards, ctx->opts.trace);
}

TotalSeqView tilde_run(const std::shared_ptr<PsiCtx>& ctx, const PartialSeq& u, Nat depth) {
  check_state_fuel(u, ctx->fuel, depth);
  if (Trace* tr = ctx->opts.trace) {
    auto& ev = tr->emit(EventKind::psi_enter);
    ev.u_dom = u.domain();
    for (const auto& [k, v] : u.entries()) ev.entries.emplace_back(k, v);
  }
  auto recurse = [ctx, u, depth](Nat mnu, const PartialSeq& v) -> Tau {
    PartialSeq child = overwrite(u, v);
    if (Trace* tr = ctx->opts.trace) {
      auto& ev = tr->emit(EventKind::update_applied);
      ev.u_dom = u.domain();
      ev.index = mnu;
      ev.value = v.at(mnu);
    }
    TotalSeqView child_view = tilde_run(ctx, child, depth + 1);
    Tau out = ctx->q.call(child_view);
    if (Trace* tr = ctx->opts.trace) {
      auto& ev = tr->emit(EventKind::psi_exit);
      ev.u_dom = child.domain();
      ev.value = Elem(out);
    }
    return out;
  };
  return make_alpha(ctx, u, recurse);
}

}  // namespace

Tau psi_simple(const EpsSimple& eps, const QFun& q, const ParamBundle& b, const PartialSeq& u,
               const Fuel& fuel, const PsiOptions& opts) {
  auto ctx = std::make_shared<PsiCtx>();
  ctx->eps_s = eps;
  ctx->dep = false;
  ctx->q = q;
  ctx->b = b;
  ctx->fuel = fuel;
  ctx->opts = opts;
  ctx->proj = resolve_proj(opts);
  return run_flat(ctx, u);
}

Tau psi_dep(const EpsDep& eps, const QFun& q, const ParamBundle& b, const PartialSeq& u,
            const Fuel& fuel, const PsiOptions& opts) {
  auto ctx = std::make_shared<PsiCtx>();
  ctx->eps_d = eps;
  ctx->dep = true;
  ctx->q = q;
  ctx->b = b;
  ctx->fuel = fuel;
  ctx->opts = opts;
  ctx->proj = resolve_proj(opts);
  return run_flat(ctx, u);
}

TotalSeqView psi_tilde(const EpsDep& eps, const QFun& q, const ParamBundle& b,
                       const PartialSeq& u, const Fuel& fuel, const PsiOptions& opts) {
  auto ctx = std::make_shared<PsiCtx>();
  ctx->eps_d = eps;
  ctx->dep = true;
  ctx->q = q;
  ctx->b = b;
  ctx->fuel = fuel;
  ctx->opts = opts;
  ctx->proj = resolve_proj(opts);
  return tilde_run(ctx, u, 0);
}

// --- BBC ------------------------------------------------------------------

namespace {

struct BbcCtx {
  EpsSimple eps;
  QFun q;
  std::function<Nat(Nat, const PartialSeq&)> m;
  Fuel fuel;
  PsiOptions opts;
};

Tau bbc_run(const std::shared_ptr<BbcCtx>& ctx, const PartialSeq& u, Nat depth) {
  check_state_fuel(u, ctx->fuel, depth);
  Trace* tr = ctx->opts.trace;
  if (tr) {
    auto& ev = tr->emit(EventKind::psi_enter);
    ev.u_dom = u.domain();
    for (const auto& [k, v] : u.entries()) ev.entries.emplace_back(k, v);
  }
  auto aux = std::make_shared<Aux>();
  auto filler = [ctx, u, aux, depth](TotalSeqView&, Nat n) -> Elem {
    StackGuard guard(*aux, n);
    Nat mnu = ctx->m(n, u);
    if (u.defined(mnu))
      throw ConditionError(n, mnu, u.domain(),
                           "update point " + std::to_string(mnu) + " chosen for index " +
                               std::to_string(n) + " is not fresh");
    emit_eps_call(ctx->opts.trace, u, n, mnu);
    PFun p = [ctx, u, mnu, depth](Elem x) -> Tau {
      if (Trace* t2 = ctx->opts.trace) {
        auto& ev = t2->emit(EventKind::update_applied);
        ev.u_dom = u.domain();
        ev.index = mnu;
        ev.value = x;
      }
      return bbc_run(ctx, update(u, mnu, x), depth + 1);
    };
    return ctx->eps.call(mnu, n, p);
  };
  TotalSeqView alpha = TotalSeqView::with_self_filler(u, filler);
  alpha.set_query_cap(ctx->fuel.max_queries);
  alpha.set_trace(tr);
  Tau out = ctx->q.call(alpha);
  if (tr) {
    auto& ev = tr->emit(EventKind::psi_exit);
    ev.u_dom = u.domain();
    ev.value = Elem(out);
  }
  return out;
}

}  // namespace

Tau bbc(const EpsSimple& eps, const QFun& q, const std::function<Nat(Nat, const PartialSeq&)>& m,
        const PartialSeq& u, const Fuel& fuel, const PsiOptions& opts) {
  auto ctx = std::make_shared<BbcCtx>();
  ctx->eps = eps;
  ctx->q = q;
  ctx->m = m;
  ctx->fuel = fuel;
  ctx->opts = opts;
  return bbc_run(ctx, u, 0);
}

// --- modified bar recursion -------------------------------------------------

namespace {

struct MbrCtx {
  EpsDep eps;
  QFun q;
  Fuel fuel;
  PsiOptions opts;
  std::function<Elem(Elem)> proj;
};

Tau mbr_run(const std::shared_ptr<MbrCtx>& ctx, const std::vector<Elem>& s, Nat depth) {
  PartialSeq base = fin_embed(s);
  check_state_fuel(base, ctx->fuel, depth);
  Trace* tr = ctx->opts.trace;
  if (tr) {
    auto& ev = tr->emit(EventKind::psi_enter);
    ev.u_dom = base.domain();
    for (const auto& [k, v] : base.entries()) ev.entries.emplace_back(k, v);
  }
  auto aux = std::make_shared<Aux>();
  auto filler = [ctx, s, base, aux, depth](TotalSeqView& self, Nat n) -> Elem {
    StackGuard guard(*aux, n);
    emit_wr_step(ctx->opts.trace, base, n);
    emit_eps_call(ctx->opts.trace, base, n, s.size());
    // the first segment is the state itself; the second is the prefix of the
    // approximation below the challenged index, assembled eagerly
    for (Nat k = 0; k < n; ++k) self.at(k);
    std::vector<Nat> s_idx(s.size());
    for (Nat k = 0; k < s.size(); ++k) s_idx[k] = k;
    std::vector<Nat> r_idx(n);
    for (Nat k = 0; k < n; ++k) r_idx[k] = k;
    GenSeqView s_view(s.size(), s_idx, [s](Nat k) { return s[k]; });
    TotalSeqView sv = self;
    GenSeqView r_view(n, r_idx, [sv, proj = ctx->proj](Nat k) mutable { return proj(sv.at(k)); });
    PFun p = [ctx, s, base, depth](Elem x) -> Tau {
      if (Trace* t2 = ctx->opts.trace) {
        auto& ev = t2->emit(EventKind::update_applied);
        ev.u_dom = base.domain();
        ev.index = s.size();
        ev.value = x;
      }
      std::vector<Elem> next = s;
      next.push_back(x);
      return mbr_run(ctx, next, depth + 1);
    };
    return ctx->eps.call(s_view, r_view, p);
  };
  TotalSeqView alpha = TotalSeqView::with_self_filler(base, filler);
  alpha.set_query_cap(ctx->fuel.max_queries);
  alpha.set_trace(tr);
  Tau out = ctx->q.call(alpha);
  if (tr) {
    auto& ev = tr->emit(EventKind::psi_exit);
    ev.u_dom = base.domain();
    ev.value = Elem(out);
  }
  return out;
}

}  // namespace

Tau mbr1(const EpsDep& eps, const QFun& q, const std::vector<Elem>& s, const Fuel& fuel,
         const PsiOptions& opts) {
  auto ctx = std::make_shared<MbrCtx>();
  ctx->eps = eps;
  ctx->q = q;
  ctx->fuel = fuel;
  ctx->opts = opts;
  ctx->proj = resolve_proj(opts);
  return mbr_run(ctx, s, 0);
}

// --- product of selection functions ----------------------------------------

namespace {

struct PsCtx {
  EpsDep eps;
  QFun q;
  Relation tri;
  std::function<Nat(Nat)> succ;
  Fuel fuel;
  PsiOptions opts;
  std::function<Elem(Elem)> proj;
};

// One activation's view.  Values at down-set indices that the concrete part
// does not carry are pulled from the parent on demand, so unforced parts of
// the parent stay unforced until somebody actually looks.
TotalSeqView ps_view(const std::shared_ptr<PsCtx>& ctx, const PartialSeq& concrete,
                     const std::vector<Nat>& dom, std::shared_ptr<TotalSeqView> parent,
                     Nat depth) {
  auto aux = std::make_shared<Aux>();
  std::set<Nat> domset(dom.begin(), dom.end());
  auto filler = [ctx, concrete, domset, parent, aux, depth](TotalSeqView& self, Nat n) -> Elem {
    if (parent && domset.count(n)) return parent->at(n);
    StackGuard guard(*aux, n);
    emit_wr_step(ctx->opts.trace, concrete, n);
    emit_eps_call(ctx->opts.trace, concrete, n, n);

    auto idx = ctx->tri.preds_of(n);
    TotalSeqView sv = self;
    GenSeqView s_view(n, idx, [sv](Nat k) mutable { return sv.at(k); });
    GenSeqView r_view(n, idx, [sv, proj = ctx->proj](Nat k) mutable { return proj(sv.at(k)); });

    PFun p = [ctx, sv, n, depth](Elem x) mutable -> Tau {
      if (Trace* tr = ctx->opts.trace) {
        auto& ev = tr->emit(EventKind::update_applied);
        ev.u_dom = sv.base().domain();
        ev.index = n;
        ev.value = x;
      }
      Nat len = ctx->succ(n);
      auto child_dom = ctx->tri.preds_of(len);
      PartialSeq child_concrete = update(PartialSeq{}, n, x);
      if (child_dom.size() > ctx->fuel.max_dom)
        throw FuelError(FuelError::Cap::dom,
                        "state exceeded " + std::to_string(ctx->fuel.max_dom) + " entries",
                        depth + 1, child_dom.size());
      if (depth + 1 >= ctx->fuel.max_depth)
        throw FuelError(FuelError::Cap::depth,
                        "recursion exceeded depth " + std::to_string(ctx->fuel.max_depth),
                        depth + 1, child_dom.size());
      auto par = std::make_shared<TotalSeqView>(sv);
      TotalSeqView child = ps_view(ctx, child_concrete, child_dom, par, depth + 1);
      if (Trace* tr = ctx->opts.trace) {
        auto& ev = tr->emit(EventKind::psi_enter);
        ev.u_dom = child_dom;
        for (Nat k : child_dom) {
          if (auto v = child.peek(k))
            ev.entries.emplace_back(k, *v);
          else if (auto w = par->peek(k))
            ev.entries.emplace_back(k, *w);
        }
      }
      Tau out = ctx->q.call(child);
      if (Trace* tr = ctx->opts.trace) {
        auto& ev = tr->emit(EventKind::psi_exit);
        ev.u_dom = child_dom;
        ev.value = Elem(out);
      }
      return out;
    };
    return ctx->eps.call(s_view, r_view, p);
  };
  TotalSeqView view = TotalSeqView::with_self_filler(concrete, filler);
  view.set_query_cap(ctx->fuel.max_queries);
  view.set_trace(ctx->opts.trace);
  return view;
}

}  // namespace

TotalSeqView ps(const EpsDep& eps, const QFun& q, const Relation& tri,
                const std::function<Nat(Nat)>& succ, const GenSeq& s, const Fuel& fuel,
                const PsiOptions& opts) {
  auto ctx = std::make_shared<PsCtx>();
  ctx->eps = eps;
  ctx->q = q;
  ctx->tri = tri;
  ctx->succ = succ;
  ctx->fuel = fuel;
  ctx->opts = opts;
  ctx->proj = resolve_proj(opts);
  auto dom = tri.preds_of(s.length_index);
  if (dom != s.body.domain())
    throw ClosednessError("start segment is not the exact '" + tri.name + "' down-set");
  if (Trace* tr = opts.trace) {
    auto& ev = tr->emit(EventKind::psi_enter);
    ev.u_dom = dom;
    for (const auto& [k, v] : s.body.entries()) ev.entries.emplace_back(k, v);
  }
  return ps_view(ctx, s.body, dom, nullptr, 0);
}

// --- derived realizers -------------------------------------------------------

EpsSimple make_bbc2_eps(const Phi1& phi, const PostH& h) {
  return EpsSimple{[phi, h](Nat m, Nat, const PFun& p) -> Elem {
    return pair_elem(kDefault, Elem(h(phi(m, p))));
  }};
}

Tau bbc2(const Phi1& phi, const PostH& h, const QFun& q, const PartialSeq& u, const Fuel& fuel,
         const PsiOptions& opts) {
  return bbc(make_bbc2_eps(phi, h), q, m_identity, u, fuel, opts);
}

namespace {

PsiOptions with_pair_proj(PsiOptions opts) {
  opts.first_proj = [](Elem e) { return elem_first(e); };
  return opts;
}

}  // namespace

EpsDep make_mbr2_eps(const Phi1& phi, const PostH& h) {
  return EpsDep{[phi, h](const GenSeqView& s, const GenSeqView&, const PFun& p) -> Elem {
    return pair_elem(kDefault, Elem(h(phi(s.length_index(), p))));
  }};
}

Tau mbr2(const Phi1& phi, const PostH& h, const QFun& q, const std::vector<Elem>& s,
         const Fuel& fuel, const PsiOptions& opts) {
  return mbr1(make_mbr2_eps(phi, h), q, s, fuel, with_pair_proj(opts));
}

EpsDep make_mbr3_eps(const Phi2& phi, const PostH& h, Nat x0) {
  return EpsDep{[phi, h, x0](const GenSeqView& s, const GenSeqView&, const PFun& p) -> Elem {
    Nat n = s.length_index();
    Nat y = n == 0 ? x0 : pair_first(s.at(n - 1).value());
    return pair_elem(kDefault, Elem(h(phi(n, y, p))));
  }};
}

QFun make_mbr3_q(const QFun& y, Nat x0) {
  return QFun{[y, x0](TotalSeqView& alpha) -> Tau {
    TotalSeqView a = alpha;
    // the first components shifted right by x0, the second components as-is
    TotalSeqView beta(PartialSeq{}, [a, x0](Nat n) mutable -> Elem {
      Nat first = n == 0 ? x0 : pair_first(a.at(n - 1).value());
      Nat second = pair_second(a.at(n).value());
      return Elem(pair_encode(first, second));
    });
    return y.call(beta);
  }};
}

Tau mbr3(const Phi2& phi, const PostH& h, const QFun& y, Nat x0, const std::vector<Elem>& s,
         const Fuel& fuel, const PsiOptions& opts) {
  return mbr1(make_mbr3_eps(phi, h, x0), make_mbr3_q(y, x0), s, fuel, with_pair_proj(opts));
}

EpsDep make_mbr4_eps(Nat a0, const Phi3& phi, const PostH& h) {
  return EpsDep{[a0, phi, h](const GenSeqView& s, const GenSeqView&, const PFun& p) -> Elem {
    Nat n = s.length_index();
    std::vector<Nat> firsts;
    firsts.reserve(n);
    for (Nat k = 0; k < n; ++k) firsts.push_back(pair_first(s.at(k).value()));
    Nat b = n == 0 ? a0 : pair_second(s.at(n - 1).value());
    return pair_elem(kDefault, Elem(h(phi(firsts, b, p))));
  }};
}

QFun make_mbr4_q(Nat a0, const QFun& y) {
  return QFun{[a0, y](TotalSeqView& alpha) -> Tau {
    TotalSeqView a = alpha;
    // the second components shifted right by a0, the first components as-is
    TotalSeqView beta(PartialSeq{}, [a, a0](Nat n) mutable -> Elem {
      Nat first = pair_first(a.at(n).value());
      Nat second = n == 0 ? a0 : pair_second(a.at(n - 1).value());
      return Elem(pair_encode(first, second));
    });
    return y.call(beta);
  }};
}

Tau mbr4(Nat a0, const Phi3& phi, const PostH& h, const QFun& y, const std::vector<Elem>& s,
         const Fuel& fuel, const PsiOptions& opts) {
  return mbr1(make_mbr4_eps(a0, phi, h), make_mbr4_q(a0, y), s, fuel, with_pair_proj(opts));
}

}  // namespace barrec
