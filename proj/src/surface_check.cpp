#include "lamsec/lattice.hpp"
#include "lamsec/surface.hpp"

namespace lamsec::surface {

namespace {

std::string pair_detail(const std::string& a, const std::string& b) { return a + " vs " + b; }

class Checker {
 public:
  Typed check(const Context& ctx, GLabel gc, const Term& term) {
    return std::visit([&](const auto& n) { return rule(ctx, gc, term, n); }, term->kind);
  }

 private:
  static Typed leaf(const Term& t, GLabel gc, Type ty) { return Typed{t, gc, std::move(ty), {}}; }

  Typed rule(const Context& ctx, GLabel gc, const Term& t, const Var& n) {
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
      if (it->first == n.name) return leaf(t, gc, it->second);
    }
    throw TypeError("var", "x : A ∈ Γ", t->pos, "unbound variable " + n.name);
  }

  Typed rule(const Context&, GLabel gc, const Term& t, const Constant& n) {
    return leaf(t, gc, n.value == Const::unit ? unit_t(n.label) : bool_t(n.label));
  }

  Typed rule(const Context& ctx, GLabel gc, const Term& t, const Lam& n) {
    Context inner = ctx;
    inner.emplace_back(n.param, n.param_type);
    Typed body = check(inner, n.pc, n.body);
    Type ty = fun_t(n.param_type, n.pc, body.type, n.label);
    return Typed{t, gc, std::move(ty), {std::move(body)}};
  }

  Typed rule(const Context& ctx, GLabel gc, const Term& t, const App& n) {
    Typed fun = check(ctx, gc, n.fun);
    Typed arg = check(ctx, gc, n.arg);
    const auto* ft = std::get_if<FunType>(&fun.type.raw);
    if (ft == nullptr) {
      throw TypeError("app", "L : (A ->[gc'] B)_g", t->pos,
                      "function type expected, got " + to_string(fun.type));
    }
    if (!cons_subtype(arg.type, *ft->dom)) {
      throw TypeError("app", "A' ≲ A", t->pos, pair_detail(to_string(arg.type), to_string(*ft->dom)));
    }
    if (!cons_subtype(fun.type.label, ft->pc)) {
      throw TypeError("app", "g ≲ gc'", t->pos,
                      pair_detail(to_string(fun.type.label), to_string(ft->pc)));
    }
    if (!cons_subtype(gc, ft->pc)) {
      throw TypeError("app", "gc ≲ gc'", t->pos, pair_detail(to_string(gc), to_string(ft->pc)));
    }
    Type ty = stamp_type(*ft->cod, fun.type.label);
    return Typed{t, gc, std::move(ty), {std::move(fun), std::move(arg)}};
  }

  Typed rule(const Context& ctx, GLabel gc, const Term& t, const If& n) {
    Typed cond = check(ctx, gc, n.cond);
    if (!std::holds_alternative<BoolType>(cond.type.raw)) {
      throw TypeError("if", "L : Bool_g", t->pos, "got " + to_string(cond.type));
    }
    GLabel branch_gc = cons_join(gc, cond.type.label);
    Typed then_b = check(ctx, branch_gc, n.then_branch);
    Typed else_b = check(ctx, branch_gc, n.else_branch);
    auto joined = cons_join(then_b.type, else_b.type);
    if (!joined) {
      throw TypeError("if", "A ∨̃ B = C", t->pos,
                      "consistent join undefined for " +
                          pair_detail(to_string(then_b.type), to_string(else_b.type)));
    }
    Type ty = stamp_type(*joined, cond.type.label);
    return Typed{t, gc, std::move(ty), {std::move(cond), std::move(then_b), std::move(else_b)}};
  }

  Typed rule(const Context& ctx, GLabel gc, const Term& t, const Let& n) {
    Typed bound = check(ctx, gc, n.bound);
    Context inner = ctx;
    inner.emplace_back(n.name, bound.type);
    Typed body = check(inner, gc, n.body);
    Type ty = body.type;
    return Typed{t, gc, std::move(ty), {std::move(bound), std::move(body)}};
  }

  Typed rule(const Context& ctx, GLabel gc, const Term& t, const Ref& n) {
    Typed init = check(ctx, gc, n.init);
    Type target{init.type.raw, n.label};
    if (!cons_subtype(init.type, target)) {
      throw TypeError("ref", "T_g ≲ T_ℓ", t->pos,
                      pair_detail(to_string(init.type), to_string(target)));
    }
    if (!cons_subtype(gc, GLabel(n.label))) {
      throw TypeError("ref", "gc ≲ ℓ", t->pos, pair_detail(to_string(gc), to_string(GLabel(n.label))));
    }
    Type ty = ref_t(target, kLow);
    return Typed{t, gc, std::move(ty), {std::move(init)}};
  }

  Typed rule(const Context& ctx, GLabel gc, const Term& t, const Deref& n) {
    Typed ref = check(ctx, gc, n.ref);
    const auto* rt = std::get_if<RefType>(&ref.type.raw);
    if (rt == nullptr) {
      throw TypeError("deref", "M : (Ref A)_g", t->pos, "got " + to_string(ref.type));
    }
    Type ty = stamp_type(*rt->inner, ref.type.label);
    return Typed{t, gc, std::move(ty), {std::move(ref)}};
  }

  Typed rule(const Context& ctx, GLabel gc, const Term& t, const Assign& n) {
    Typed ref = check(ctx, gc, n.ref);
    Typed value = check(ctx, gc, n.value);
    const auto* rt = std::get_if<RefType>(&ref.type.raw);
    if (rt == nullptr) {
      throw TypeError("assign", "L : (Ref T_ĝ)_g", t->pos, "got " + to_string(ref.type));
    }
    const Type& cell = *rt->inner;
    if (!cons_subtype(value.type, cell)) {
      throw TypeError("assign", "A ≲ T_ĝ", t->pos, pair_detail(to_string(value.type), to_string(cell)));
    }
    if (!cons_subtype(ref.type.label, cell.label)) {
      throw TypeError("assign", "g ≲ ĝ", t->pos,
                      pair_detail(to_string(ref.type.label), to_string(cell.label)));
    }
    if (!cons_subtype(gc, cell.label)) {
      throw TypeError("assign", "gc ≲ ĝ", t->pos, pair_detail(to_string(gc), to_string(cell.label)));
    }
    return Typed{t, gc, unit_t(kLow), {std::move(ref), std::move(value)}};
  }

  Typed rule(const Context& ctx, GLabel gc, const Term& t, const Ann& n) {
    Typed inner = check(ctx, gc, n.term);
    if (!cons_subtype(inner.type, n.type)) {
      throw TypeError("ann", "A' ≲ A", t->pos, pair_detail(to_string(inner.type), to_string(n.type)));
    }
    return Typed{t, gc, n.type, {std::move(inner)}};
  }
};

}  // namespace

Typed typecheck(const Context& ctx, GLabel gc, const Term& term) {
  return Checker{}.check(ctx, gc, term);
}

bool recheck(const Context& ctx, const Typed& typed) {
  try {
    return typecheck(ctx, typed.gc, typed.term) == typed;
  } catch (const TypeError&) {
    return false;
  }
}

}  // namespace lamsec::surface
