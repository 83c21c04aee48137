#include "lamsec/smallstep.hpp"

#include "lamsec/lattice.hpp"

namespace lamsec::small {

using namespace cc;

namespace {

[[noreturn]] void internal(const std::string& what) { throw InternalError(what); }

Type relabel(const Type& t, GLabel g) { return Type{t.raw, g}; }

Type with_pc(const Type& t, GLabel pc) {
  const auto& f = std::get<FunType>(t.raw);
  return Type{FunType{f.dom, pc, f.cod}, t.label};
}

Type with_inner_label(const Type& t, GLabel g) {
  const auto& r = std::get<RefType>(t.raw);
  return Type{RefType{relabel(*r.inner, g)}, t.label};
}

const FunType& fun_of(const Type& t) {
  const auto* f = std::get_if<FunType>(&t.raw);
  if (f == nullptr) internal("expected a function type, got " + to_string(t));
  return *f;
}

const RefType& ref_of(const Type& t) {
  const auto* r = std::get_if<RefType>(&t.raw);
  if (r == nullptr) internal("expected a reference type, got " + to_string(t));
  return *r;
}

GLabel inner_label(const Type& ref) { return ref_of(ref).inner->label; }

/// The inert cast wrapping V, required by a cast rule.
const CastE& proxy(const Term& v, const Cast& c) {
  const auto* w = as<CastE>(v);
  if (w == nullptr || !is_inert(w->cast)) {
    internal("cast " + to_string(c) + " applied to unexpected value " + to_string(v));
  }
  return *w;
}

Term recast(const Term& w, Type s0, Type t0, const Cast& c0, Type s, Type t, const Cast& c) {
  return cast(cast(w, Cast{std::move(s0), std::move(t0), c0.blame}),
              Cast{std::move(s), std::move(t), c.blame});
}

Term apply_outer(const Term& v, const Cast& c, bool fun, Coverage* cov) {
  const CastE& w = proxy(v, c);
  const Cast& c0 = w.cast;
  if (!c0.target.label.is_star() || !c0.source.label.is_concrete()) {
    internal("projection " + to_string(c) + " of a non-injection " + to_string(v));
  }
  const Label l1 = c0.source.label.concrete();
  if (c.target.label.is_star()) {
    hit(cov, fun ? Rule::cast_fun_id_star : Rule::cast_ref_id_star);
    return recast(w.term, c0.source, relabel(c0.target, l1), c0, relabel(c.source, l1), c.target, c);
  }
  const Label l4 = c.target.label.concrete();
  if (!leq(l1, l4)) {
    hit(cov, fun ? Rule::cast_fun_proj_blame : Rule::cast_ref_proj_blame);
    return blame(c.blame);
  }
  hit(cov, fun ? Rule::cast_fun_proj : Rule::cast_ref_proj);
  return recast(w.term, relabel(c0.source, l4), relabel(c0.target, l4), c0, relabel(c.source, l4),
                relabel(c.target, l4), c);
}

Term apply_fun_pc(const Term& v, const Cast& c, Coverage* cov) {
  const CastE& w = proxy(v, c);
  const Cast& c0 = w.cast;
  const GLabel pc1 = fun_of(c0.source).pc;
  if (!fun_of(c0.target).pc.is_star() || !pc1.is_concrete()) {
    internal("pc projection " + to_string(c) + " of a non-injection " + to_string(v));
  }
  const GLabel pc4 = fun_of(c.target).pc;
  if (pc4.is_star()) {
    hit(cov, Rule::cast_fun_pc_id_star);
    return recast(w.term, c0.source, with_pc(c0.target, pc1), c0, with_pc(c.source, pc1), c.target, c);
  }
  if (!leq(pc4.concrete(), pc1.concrete())) {
    hit(cov, Rule::cast_fun_pc_proj_blame);
    return blame(c.blame);
  }
  hit(cov, Rule::cast_fun_pc_proj);
  return recast(w.term, with_pc(c0.source, pc4), with_pc(c0.target, pc4), c0, with_pc(c.source, pc4),
                with_pc(c.target, pc4), c);
}

Term apply_ref_ref(const Term& v, const Cast& c, Coverage* cov) {
  const CastE& w = proxy(v, c);
  const Cast& c0 = w.cast;
  const GLabel l1 = inner_label(c0.source);
  if (!inner_label(c0.target).is_star() || !l1.is_concrete()) {
    internal("cell projection " + to_string(c) + " of a non-injection " + to_string(v));
  }
  const GLabel l4 = inner_label(c.target);
  if (l4.is_star()) {
    hit(cov, Rule::cast_ref_ref_id_star);
    return recast(w.term, c0.source, with_inner_label(c0.target, l1), c0,
                  with_inner_label(c.source, l1), c.target, c);
  }
  if (l1 != l4) {
    hit(cov, Rule::cast_ref_ref_proj_blame);
    return blame(c.blame);
  }
  hit(cov, Rule::cast_ref_ref_proj);
  return recast(w.term, with_inner_label(c0.source, l4), with_inner_label(c0.target, l4), c0,
                with_inner_label(c.source, l4), with_inner_label(c.target, l4), c);
}

}  // namespace

// ---- frames ------------------------------------------------------------------

Term plug(const Term& m, const Frame& f) {
  return std::visit(
      [&](const auto& fr) -> Term {
        using F = std::decay_t<decltype(fr)>;
        if constexpr (std::is_same_v<F, AppL>) return app(m, fr.arg);
        if constexpr (std::is_same_v<F, AppR>) return app(fr.fun, m);
        if constexpr (std::is_same_v<F, IfF>) return if_(m, fr.type, fr.then_branch, fr.else_branch);
        if constexpr (std::is_same_v<F, LetF>) return let(fr.name, m, fr.body);
        if constexpr (std::is_same_v<F, RefCheckedF>) return ref(WriteMode::checked, fr.label, fr.cell, m);
        if constexpr (std::is_same_v<F, DerefF>) return deref(m);
        if constexpr (std::is_same_v<F, AssignCheckedL>) return assign(WriteMode::checked, m, fr.value);
        if constexpr (std::is_same_v<F, AssignCheckedR>) return assign(WriteMode::checked, fr.ref, m);
        if constexpr (std::is_same_v<F, AssignNSUL>) return assign(WriteMode::nsu, m, fr.value);
        if constexpr (std::is_same_v<F, CastF>) return cast(m, fr.cast);
        if constexpr (std::is_same_v<F, CastPCF>) return cast_pc(fr.label, m);
      },
      f);
}

std::optional<std::pair<Frame, Term>> decompose(const Term& m) {
  using Result = std::optional<std::pair<Frame, Term>>;
  return std::visit(
      [&](const auto& n) -> Result {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, App>) {
          if (!is_value(n.fun)) return std::pair{Frame{AppL{n.arg}}, n.fun};
          if (!is_value(n.arg)) return std::pair{Frame{AppR{n.fun}}, n.arg};
        } else if constexpr (std::is_same_v<N, If>) {
          if (!is_value(n.cond)) return std::pair{Frame{IfF{n.type, n.then_branch, n.else_branch}}, n.cond};
        } else if constexpr (std::is_same_v<N, Let>) {
          if (!is_value(n.bound)) return std::pair{Frame{LetF{n.name, n.body}}, n.bound};
        } else if constexpr (std::is_same_v<N, Ref>) {
          if (n.mode == WriteMode::checked && !is_value(n.init)) {
            return std::pair{Frame{RefCheckedF{n.label, n.cell}}, n.init};
          }
        } else if constexpr (std::is_same_v<N, Deref>) {
          if (!is_value(n.ref)) return std::pair{Frame{DerefF{}}, n.ref};
        } else if constexpr (std::is_same_v<N, Assign>) {
          if (n.mode == WriteMode::checked) {
            if (!is_value(n.ref)) return std::pair{Frame{AssignCheckedL{n.value}}, n.ref};
            if (!is_value(n.value)) return std::pair{Frame{AssignCheckedR{n.ref}}, n.value};
          } else if (n.mode == WriteMode::nsu) {
            if (!is_value(n.ref)) return std::pair{Frame{AssignNSUL{n.value}}, n.ref};
          }
        } else if constexpr (std::is_same_v<N, CastE>) {
          if (!is_value(n.term)) return std::pair{Frame{CastF{n.cast}}, n.term};
        } else if constexpr (std::is_same_v<N, CastPC>) {
          if (!is_value(n.term)) return std::pair{Frame{CastPCF{n.label}}, n.term};
        }
        return std::nullopt;
      },
      m->kind);
}

// ---- casts -------------------------------------------------------------------

Term apply_cast(const Term& v, const Cast& c, Coverage* cov) {
  if (!is_value(v)) internal("apply_cast on a non-value " + to_string(v));
  if (!is_active(c)) internal("apply_cast with an inert cast " + to_string(c));
  const Type& s = c.source;
  const Type& t = c.target;
  if (is_base(s.raw)) {
    if (s.label == t.label) {
      hit(cov, Rule::cast_base_id);
      return v;
    }
    const CastE& w = proxy(v, c);
    if (!w.cast.source.label.is_concrete() || !w.cast.target.label.is_star()) {
      internal("projection " + to_string(c) + " of a non-injection " + to_string(v));
    }
    if (leq(w.cast.source.label.concrete(), t.label.concrete())) {
      hit(cov, Rule::cast_base_proj);
      return w.term;
    }
    hit(cov, Rule::cast_base_proj_blame);
    return blame(c.blame);
  }
  const bool fun = std::holds_alternative<FunType>(s.raw);
  if (s.label.is_star()) return apply_outer(v, c, fun, cov);
  if (fun) return apply_fun_pc(v, c, cov);
  return apply_ref_ref(v, c, cov);
}

Cast branch_c(const Type& a, const Cast& c) {
  if (!std::holds_alternative<BoolType>(c.source.raw) || !c.target.label.is_star()) {
    internal("branch_c on " + to_string(c));
  }
  return Cast{stamp_type(a, c.source.label), stamp_type(a, kStar), c.blame};
}

Cast dom_c(const Cast& c) { return Cast{*fun_of(c.target).dom, *fun_of(c.source).dom, c.blame}; }

Cast cod_c(const Cast& c) {
  return Cast{stamp_type(*fun_of(c.source).cod, c.source.label),
              stamp_type(*fun_of(c.target).cod, c.target.label), c.blame};
}

Cast in_c(const Cast& c) { return Cast{*ref_of(c.target).inner, *ref_of(c.source).inner, c.blame}; }

Cast out_c(const Cast& c) {
  return Cast{stamp_type(*ref_of(c.source).inner, c.source.label),
              stamp_type(*ref_of(c.target).inner, c.target.label), c.blame};
}

Term elim_fun_proxy(const Term& v, const Term& w, const Cast& c, Label pc) {
  const FunType& src = fun_of(c.source);
  const Term call = app(v, cast(w, dom_c(c)));
  if (fun_of(c.target).pc.is_concrete()) return cast(call, cod_c(c));
  if (!src.pc.is_concrete() || !c.source.label.is_concrete()) internal("elim_fun_proxy on " + to_string(c));
  if (leq(join(pc, c.source.label.concrete()), src.pc.concrete())) {
    return cast(cast_pc(pc, call), cod_c(c));
  }
  return blame(c.blame);
}

Term elim_ref_proxy(const Term& v, const Term& m, const Cast& c, WriteMode mode) {
  const Term write = assign(mode, v, cast(m, in_c(c)));
  if (inner_label(c.target).is_concrete()) return write;
  const GLabel l1 = inner_label(c.source);
  if (!l1.is_concrete() || !c.source.label.is_concrete()) internal("elim_ref_proxy on " + to_string(c));
  if (leq(c.source.label.concrete(), l1.concrete())) return write;
  return blame(c.blame);
}

// ---- reduction ---------------------------------------------------------------

namespace {

Stepped to(Term t, const Heap& mu, Rule r) { return Stepped{std::move(t), mu, r, std::nullopt, false}; }

bool is_true(const Term& v) {
  const auto* k = as<Constant>(v);
  return k != nullptr && k->value == Const::tt;
}

StepResult redex(const Term& m, const Heap& mu, Label pc, Coverage* cov) {
  auto fired = [&](Term t, Rule r) -> StepResult {
    hit(cov, r);
    return to(std::move(t), mu, r);
  };
  auto stuck = [&]() -> StepResult { return Stuck{"no rule applies to " + to_string(m)}; };

  if (const auto* n = as<App>(m)) {
    if (const auto* f = as<Lam>(n->fun)) return fired(prot(f->label, subst(f->body, f->param, n->arg)), Rule::beta);
    if (const auto* w = as<CastE>(n->fun)) {
      if (!std::holds_alternative<FunType>(w->cast.source.raw)) return stuck();
      return fired(elim_fun_proxy(w->term, n->arg, w->cast, pc), Rule::fun_cast);
    }
    return stuck();
  }
  if (const auto* n = as<If>(m)) {
    if (const auto* k = as<Constant>(n->cond)) {
      if (k->value == Const::unit) return stuck();
      const bool t = k->value == Const::tt;
      return fired(prot(k->label, t ? n->then_branch : n->else_branch),
                   t ? Rule::beta_if_true : Rule::beta_if_false);
    }
    if (const auto* w = as<CastE>(n->cond)) {
      const auto* k = as<Constant>(w->term);
      if (k == nullptr || k->value == Const::unit) return stuck();
      const bool t = is_true(w->term);
      Term branch = prot(k->label, cast_pc(kStar, t ? n->then_branch : n->else_branch));
      return fired(cast(branch, branch_c(n->type, w->cast)), t ? Rule::if_cast_true : Rule::if_cast_false);
    }
    return stuck();
  }
  if (const auto* n = as<Let>(m)) return fired(subst(n->body, n->name, n->bound), Rule::beta_let);
  if (const auto* n = as<Ref>(m)) {
    switch (n->mode) {
      case WriteMode::static_:
        return fired(ref(WriteMode::checked, n->label, n->cell, n->init), Rule::ref_static);
      case WriteMode::nsu:
        if (leq(pc, n->label)) return fired(ref(WriteMode::checked, n->label, n->cell, n->init), Rule::ref_nsu_ok);
        return fired(nsu_error(), Rule::ref_nsu_fail);
      case WriteMode::checked: {
        hit(cov, Rule::ref);
        const Address a = fresh(mu, n->label);
        return Stepped{addr(a, Label::low), extend(mu, a, n->init), Rule::ref, Allocation{a, n->cell}, true};
      }
    }
  }
  if (const auto* n = as<Deref>(m)) {
    if (const auto* a = as<Addr>(n->ref)) {
      auto v = lookup(mu, a->addr);
      if (!v) return Stuck{"dangling address " + to_string(a->addr)};
      return fired(prot(join(a->addr.half, a->label), *v), Rule::deref);
    }
    if (const auto* w = as<CastE>(n->ref)) {
      if (!std::holds_alternative<RefType>(w->cast.source.raw)) return stuck();
      return fired(cast(deref(w->term), out_c(w->cast)), Rule::deref_cast);
    }
    return stuck();
  }
  if (const auto* n = as<Assign>(m)) {
    if (n->mode == WriteMode::static_) {
      return fired(assign(WriteMode::checked, n->ref, n->value), Rule::assign_static);
    }
    const auto* w = as<CastE>(n->ref);
    if (w != nullptr && !std::holds_alternative<RefType>(w->cast.source.raw)) return stuck();
    if (n->mode == WriteMode::nsu) {
      if (w != nullptr) return fired(elim_ref_proxy(w->term, n->value, w->cast, WriteMode::nsu), Rule::assign_nsu_cast);
      const auto* a = as<Addr>(n->ref);
      if (a == nullptr) return stuck();
      if (leq(pc, a->addr.half)) return fired(assign(WriteMode::checked, n->ref, n->value), Rule::assign_nsu_ok);
      return fired(nsu_error(), Rule::assign_nsu_fail);
    }
    if (w != nullptr) {
      return fired(elim_ref_proxy(w->term, n->value, w->cast, WriteMode::checked), Rule::assign_cast);
    }
    const auto* a = as<Addr>(n->ref);
    if (a == nullptr) return stuck();
    hit(cov, Rule::assign);
    return Stepped{unit(Label::low), extend(mu, a->addr, n->value), Rule::assign, std::nullopt, true};
  }
  if (const auto* n = as<CastE>(m)) return fired(apply_cast(n->term, n->cast, cov), Rule::cast);
  if (const auto* n = as<CastPC>(m)) return fired(n->term, Rule::beta_cast_pc);
  return stuck();
}

StepResult step_at(const Term& m, const Heap& mu, Label pc, Coverage* cov, int depth) {
  if (depth > kMaxDepth) return TooDeep{};
  if (is_value(m)) return Halted{m};
  if (is_error(m)) return Faulted{m};
  if (const auto* p = as<Prot>(m)) {
    if (is_value(p->term)) {
      hit(cov, Rule::prot_val);
      return to(stamp_value(p->term, p->label), mu, Rule::prot_val);
    }
    if (is_error(p->term)) {
      hit(cov, Rule::prot_err);
      return to(p->term, mu, Rule::prot_err);
    }
    StepResult r = step_at(p->term, mu, join(pc, p->label), cov, depth + 1);
    if (auto* s = std::get_if<Stepped>(&r)) {
      hit(cov, Rule::prot_ctx);
      s->term = prot(p->label, s->term);
    }
    return r;
  }
  if (auto d = decompose(m)) {
    auto& [frame, hole] = *d;
    if (is_error(hole)) {
      hit(cov, Rule::xi_err);
      return to(hole, mu, Rule::xi_err);
    }
    StepResult r = step_at(hole, mu, pc, cov, depth + 1);
    if (auto* s = std::get_if<Stepped>(&r)) {
      hit(cov, Rule::xi);
      s->term = plug(s->term, frame);
    }
    return r;
  }
  return redex(m, mu, pc, cov);
}

}  // namespace

StepResult step(const Term& m, const Heap& mu, Label pc, Coverage* cov) {
  return step_at(m, mu, pc, cov, 0);
}

// ---- audit -------------------------------------------------------------------

namespace {

/// Every (frame, hole) split of M allowed by the frame grammar.
std::vector<Term> holes(const Term& m) {
  std::vector<Term> out;
  if (const auto* n = as<App>(m)) {
    out.push_back(n->fun);
    if (is_value(n->fun)) out.push_back(n->arg);
  } else if (const auto* n = as<If>(m)) {
    out.push_back(n->cond);
  } else if (const auto* n = as<Let>(m)) {
    out.push_back(n->bound);
  } else if (const auto* n = as<Ref>(m)) {
    if (n->mode == WriteMode::checked) out.push_back(n->init);
  } else if (const auto* n = as<Deref>(m)) {
    out.push_back(n->ref);
  } else if (const auto* n = as<Assign>(m)) {
    if (n->mode != WriteMode::static_) out.push_back(n->ref);
    if (n->mode == WriteMode::checked && is_value(n->ref)) out.push_back(n->value);
  } else if (const auto* n = as<CastE>(m)) {
    out.push_back(n->term);
  } else if (const auto* n = as<CastPC>(m)) {
    out.push_back(n->term);
  }
  return out;
}

bool inert_wrap(const Term& v) {
  const auto* w = as<CastE>(v);
  return w != nullptr && is_value(v) && is_inert(w->cast);
}

}  // namespace

std::vector<Rule> matching_rules(const Term& m, const Heap& mu, Label pc) {
  std::vector<Rule> rules;
  auto add = [&](bool cond, Rule r) {
    if (cond) rules.push_back(r);
  };
  for (const Term& h : holes(m)) {
    add(!is_value(h) && !is_error(h), Rule::xi);
    add(is_error(h), Rule::xi_err);
  }
  if (const auto* n = as<Prot>(m)) {
    add(is_value(n->term), Rule::prot_val);
    add(is_error(n->term), Rule::prot_err);
    add(!is_value(n->term) && !is_error(n->term), Rule::prot_ctx);
  }
  if (const auto* n = as<App>(m)) {
    add(as<Lam>(n->fun) != nullptr && is_value(n->arg), Rule::beta);
    add(inert_wrap(n->fun) && is_value(n->arg), Rule::fun_cast);
  }
  if (const auto* n = as<If>(m)) {
    const auto* k = as<Constant>(n->cond);
    add(k != nullptr && k->value == Const::tt, Rule::beta_if_true);
    add(k != nullptr && k->value == Const::ff, Rule::beta_if_false);
    if (inert_wrap(n->cond)) {
      const auto* wk = as<Constant>(as<CastE>(n->cond)->term);
      add(wk != nullptr && wk->value == Const::tt, Rule::if_cast_true);
      add(wk != nullptr && wk->value == Const::ff, Rule::if_cast_false);
    }
  }
  if (const auto* n = as<Let>(m)) add(is_value(n->bound), Rule::beta_let);
  if (const auto* n = as<Ref>(m)) {
    add(n->mode == WriteMode::static_, Rule::ref_static);
    add(n->mode == WriteMode::nsu && leq(pc, n->label), Rule::ref_nsu_ok);
    add(n->mode == WriteMode::nsu && !leq(pc, n->label), Rule::ref_nsu_fail);
    add(n->mode == WriteMode::checked && is_value(n->init), Rule::ref);
  }
  if (const auto* n = as<Deref>(m)) {
    const auto* a = as<Addr>(n->ref);
    add(a != nullptr && lookup(mu, a->addr).has_value(), Rule::deref);
    add(inert_wrap(n->ref), Rule::deref_cast);
  }
  if (const auto* n = as<Assign>(m)) {
    const auto* a = as<Addr>(n->ref);
    add(n->mode == WriteMode::static_, Rule::assign_static);
    add(n->mode == WriteMode::nsu && a != nullptr && leq(pc, a->addr.half), Rule::assign_nsu_ok);
    add(n->mode == WriteMode::nsu && a != nullptr && !leq(pc, a->addr.half), Rule::assign_nsu_fail);
    add(n->mode == WriteMode::nsu && inert_wrap(n->ref), Rule::assign_nsu_cast);
    add(n->mode == WriteMode::checked && a != nullptr && is_value(n->value), Rule::assign);
    add(n->mode == WriteMode::checked && inert_wrap(n->ref) && is_value(n->value), Rule::assign_cast);
  }
  if (const auto* n = as<CastE>(m)) add(is_value(n->term) && is_active(n->cast), Rule::cast);
  if (const auto* n = as<CastPC>(m)) add(is_value(n->term), Rule::beta_cast_pc);
  return rules;
}

// ---- driver ------------------------------------------------------------------

namespace {

std::string trace_line(long n, Label pc, const Term& m) {
  return "#" + std::to_string(n) + " pc=" + std::string(to_string(pc)) + " ⊢ " + to_string(m);
}

/// The innermost configuration the top-level step will reduce, with its pc.
std::pair<Term, Label> focus(Term m, Label pc) {
  for (;;) {
    if (const auto* p = as<Prot>(m); p != nullptr && !is_value(p->term) && !is_error(p->term)) {
      pc = join(pc, p->label);
      m = p->term;
      continue;
    }
    if (as<Prot>(m) != nullptr) return {m, pc};
    auto d = decompose(m);
    if (!d || is_error(d->second)) return {m, pc};
    m = d->second;
  }
}

}  // namespace

Run run_small(const Term& m, Label pc, const RunOptions& opts, Coverage* cov, Heap mu) {
  Run run;
  Term cur = m;
  if (opts.trace) run.trace.push_back(trace_line(0, pc, cur));
  while (true) {
    if (opts.audit && !is_value(cur) && !is_error(cur)) {
      auto [inner, ipc] = focus(cur, pc);
      const auto n = matching_rules(inner, mu, ipc).size();
      if (n != 1) {
        run.outcome = Outcome::stuck(std::to_string(n) + " rules match " + to_string(inner));
        return run;
      }
    }
    StepResult r = step(cur, mu, pc, cov);
    if (auto* h = std::get_if<Halted>(&r)) {
      run.outcome = Outcome::of_value(h->value, std::move(mu));
      return run;
    }
    if (auto* f = std::get_if<Faulted>(&r)) {
      run.outcome = Outcome::of_error(f->error);
      return run;
    }
    if (auto* s = std::get_if<Stuck>(&r)) {
      run.outcome = Outcome::stuck(s->why);
      return run;
    }
    if (std::holds_alternative<TooDeep>(r)) {
      run.outcome = Outcome::timeout("evaluation context too deep");
      return run;
    }
    if (run.steps >= opts.fuel) {
      run.outcome = Outcome::timeout("out of fuel after " + std::to_string(run.steps) + " steps");
      return run;
    }
    auto& s = std::get<Stepped>(r);
    ++run.steps;
    cur = std::move(s.term);
    mu = std::move(s.heap);
    if (opts.trace) {
      run.trace.push_back(trace_line(run.steps, pc, cur));
      if (s.wrote) run.trace.push_back("   heap " + to_string(mu));
    }
  }
}

}  // namespace lamsec::small
