#include "lamsec/cc.hpp"
#include "lamsec/lattice.hpp"

namespace lamsec::cc {

TypeError::TypeError(std::string rule, std::string premise, const std::string& detail)
    : std::runtime_error(rule + ": " + premise + " (" + detail + ")"),
      rule_(std::move(rule)),
      premise_(std::move(premise)) {}

bool below(const std::optional<Type>& a, const Type& b) { return !a || subtype(*a, b); }

namespace {

using Ty = std::optional<Type>;

std::string show(const Ty& t) { return t ? to_string(*t) : "bottom"; }

class Checker {
 public:
  Checker(const HeapContext& sigma, CheckOptions opts) : sigma_(sigma), opts_(opts) {}

  Ty check(const Context& ctx, GLabel gc, Label pc, const Term& m) {
    return std::visit([&](const auto& n) { return rule(ctx, gc, pc, n); }, m->kind);
  }

 private:
  // Premises quantified over every pc are checked at low, and optionally at high.
  Ty check_all_pc(const Context& ctx, GLabel gc, const Term& m) {
    Ty t = check(ctx, gc, Label::low, m);
    if (opts_.recheck_high) {
      Ty h = check(ctx, gc, Label::high, m);
      if (h != t) {
        throw TypeError("pc", "typing agrees for every pc", show(t) + " vs " + show(h));
      }
    }
    return t;
  }

  static void require(bool ok, const char* rule, const char* premise, const std::string& detail) {
    if (!ok) throw TypeError(rule, premise, detail);
  }

  Ty rule(const Context& ctx, GLabel, Label, const Var& n) {
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
      if (it->first == n.name) return it->second;
    }
    throw TypeError("var", "x : A ∈ Γ", "unbound variable " + n.name);
  }

  Ty rule(const Context&, GLabel, Label, const Constant& n) {
    return n.value == Const::unit ? unit_t(n.label) : bool_t(n.label);
  }

  Ty rule(const Context&, GLabel, Label, const Addr& n) {
    auto cell = sigma_.lookup(n.addr);
    require(cell.has_value(), "addr", "Σ(a) = A", "unknown address " + to_string(n.addr));
    return ref_t(*cell, n.label);
  }

  Ty rule(const Context& ctx, GLabel, Label, const Lam& n) {
    Context inner = ctx;
    inner.emplace_back(n.param, n.param_type);
    Ty body = check_all_pc(inner, n.pc, n.body);
    require(body.has_value(), "lam", "N : B", "body has no type");
    return fun_t(n.param_type, n.pc, *body, n.label);
  }

  Ty rule(const Context& ctx, GLabel gc, Label pc, const App& n) {
    Ty fun = check(ctx, gc, pc, n.fun);
    Ty arg = check(ctx, gc, pc, n.arg);
    if (!fun) return std::nullopt;
    const auto* ft = std::get_if<FunType>(&fun->raw);
    require(ft != nullptr, "app", "L : (A ->[gc ∨̃ g] B)_g", "got " + show(fun));
    require(below(arg, *ft->dom), "app", "M : A", show(arg) + " vs " + to_string(*ft->dom));
    GLabel needed = cons_join(gc, fun->label);
    require(subtype(needed, ft->pc), "app", "gc ∨̃ g <: gc'",
            to_string(needed) + " vs " + to_string(ft->pc));
    return stamp_type(*ft->cod, fun->label);
  }

  Ty rule(const Context& ctx, GLabel gc, Label pc, const If& n) {
    Ty cond = check(ctx, gc, pc, n.cond);
    GLabel g = cond ? cond->label : GLabel(Label::low);
    if (cond) {
      require(std::holds_alternative<BoolType>(cond->raw), "if", "L : Bool_g", "got " + show(cond));
    }
    GLabel branch_gc = cons_join(gc, g);
    Ty then_t = check_all_pc(ctx, branch_gc, n.then_branch);
    Ty else_t = check_all_pc(ctx, branch_gc, n.else_branch);
    require(below(then_t, n.type), "if", "M : A", show(then_t) + " vs " + to_string(n.type));
    require(below(else_t, n.type), "if", "N : A", show(else_t) + " vs " + to_string(n.type));
    if (!cond) return std::nullopt;
    return stamp_type(n.type, g);
  }

  Ty rule(const Context& ctx, GLabel gc, Label pc, const Let& n) {
    Ty bound = check(ctx, gc, pc, n.bound);
    if (!bound) return std::nullopt;
    Context inner = ctx;
    inner.emplace_back(n.name, *bound);
    return check_all_pc(inner, gc, n.body);
  }

  Ty rule(const Context& ctx, GLabel gc, Label pc, const Ref& n) {
    Type cell{n.cell, n.label};
    Ty init = check(ctx, gc, pc, n.init);
    require(below(init, cell), "ref", "M : T_ℓ", show(init) + " vs " + to_string(cell));
    switch (n.mode) {
      case WriteMode::static_:
        require(gc.is_concrete() && leq(gc.concrete(), n.label), "ref", "pc' ≤ ℓ",
                to_string(gc) + " vs " + std::string(to_string(n.label)));
        break;
      case WriteMode::checked:
        require(leq(pc, n.label), "ref✓", "pc ≤ ℓ",
                std::string(to_string(pc)) + " vs " + std::string(to_string(n.label)));
        break;
      case WriteMode::nsu:
        break;
    }
    return ref_t(cell, Label::low);
  }

  Ty rule(const Context& ctx, GLabel gc, Label pc, const Deref& n) {
    Ty r = check(ctx, gc, pc, n.ref);
    if (!r) return std::nullopt;
    const auto* rt = std::get_if<RefType>(&r->raw);
    require(rt != nullptr, "deref", "M : (Ref A)_g", "got " + show(r));
    return stamp_type(*rt->inner, r->label);
  }

  Ty rule(const Context& ctx, GLabel gc, Label pc, const Assign& n) {
    Ty r = check(ctx, gc, pc, n.ref);
    Ty value = n.mode == WriteMode::nsu ? check_all_pc(ctx, gc, n.value) : check(ctx, gc, pc, n.value);
    if (!r) return unit_t(Label::low);
    const auto* rt = std::get_if<RefType>(&r->raw);
    require(rt != nullptr, "assign", "L : (Ref T_g)_g", "got " + show(r));
    const Type& cell = *rt->inner;
    require(below(value, cell), "assign", "M : T_g", show(value) + " vs " + to_string(cell));
    require(subtype(r->label, cell.label), "assign", "L : (Ref T_g)_g",
            "reference label " + to_string(r->label) + " vs cell label " + to_string(cell.label));
    switch (n.mode) {
      case WriteMode::static_:
        require(cell.label.is_concrete() && gc.is_concrete() && leq(gc.concrete(), cell.label.concrete()),
                "assign", "pc' ≤ ℓ", to_string(gc) + " vs " + to_string(cell.label));
        break;
      case WriteMode::checked:
        require(cell.label.is_concrete() && leq(pc, cell.label.concrete()), "assign✓", "pc ≤ ℓ",
                std::string(to_string(pc)) + " vs " + to_string(cell.label));
        break;
      case WriteMode::nsu:
        break;
    }
    return unit_t(Label::low);
  }

  Ty rule(const Context& ctx, GLabel gc, Label pc, const CastE& n) {
    require(consistent(n.cast.source, n.cast.target), "cast", "A ∼ B", to_string(n.cast));
    Ty inner = check(ctx, gc, pc, n.term);
    require(below(inner, n.cast.source), "cast", "M : A",
            show(inner) + " vs " + to_string(n.cast.source));
    return n.cast.target;
  }

  Ty rule(const Context& ctx, GLabel, Label pc, const CastPC& n) {
    require(consistent(GLabel(pc), n.label), "cast_pc", "pc ∼ g",
            std::string(to_string(pc)) + " vs " + to_string(n.label));
    return check(ctx, n.label, pc, n.term);
  }

  Ty rule(const Context& ctx, GLabel gc, Label pc, const Prot& n) {
    Ty inner = check(ctx, cons_join(gc, n.label), join(pc, n.label), n.term);
    if (!inner) return std::nullopt;
    return stamp_type(*inner, n.label);
  }

  Ty rule(const Context&, GLabel, Label, const Error&) { return std::nullopt; }

  Ty rule(const Context&, GLabel, Label, const Opaque&) {
    throw TypeError("opaque", "typable term", "the opaque value has no type");
  }

  const HeapContext& sigma_;
  CheckOptions opts_;
};

}  // namespace

std::optional<Type> typecheck(const Context& ctx, const HeapContext& sigma, GLabel gc, Label pc,
                              const Term& m, CheckOptions opts) {
  return Checker(sigma, opts).check(ctx, gc, pc, m);
}

}  // namespace lamsec::cc
