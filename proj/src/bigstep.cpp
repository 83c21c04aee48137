#include "lamsec/bigstep.hpp"

#include "lamsec/smallstep.hpp"

namespace lamsec::big {

using namespace cc;

namespace {

inline constexpr int kMaxDepth = 3000;

/// Unwinds the evaluator with a non-value outcome.
struct Abort {
  Outcome outcome;
};

class Evaluator {
 public:
  Evaluator(const Options& opts, Coverage* cov) : opts_(opts), cov_(cov) {}

  Term eval(Heap& mu, Label pc, const Term& m, int depth) {
    if (++result.steps > opts_.fuel) {
      throw Abort{Outcome::timeout("out of fuel after " + std::to_string(opts_.fuel) + " judgements")};
    }
    if (depth > kMaxDepth) throw Abort{Outcome::timeout("evaluation nested too deeply")};
    if (is_value(m)) {
      hit(cov_, Rule::big_val);
      return m;
    }
    if (is_error(m)) throw Abort{Outcome::of_error(m)};
    return std::visit([&](const auto& n) { return rule(mu, pc, m, n, depth + 1); }, m->kind);
  }

  Result result;

 private:
  /// Evaluates M at pc ∨ ℓ, reporting raised-pc sub-evaluations to the hook.
  Term eval_under(Heap& mu, Label pc, Label l, const Term& m, int depth) {
    const Label inner = join(pc, l);
    if (!opts_.on_high_pc || inner == pc) return eval(mu, inner, m, depth);
    Heap before = mu;
    Term v = eval(mu, inner, m, depth);
    opts_.on_high_pc(before, mu, m);
    return v;
  }

  static std::string shape(const Term& m) { return "no rule applies to " + to_string(m); }

  Term rule(Heap&, Label, const Term& m, const Var&, int) {
    throw Abort{Outcome::stuck("free variable in " + to_string(m))};
  }

  template <class Leaf>
    requires(std::is_same_v<Leaf, Constant> || std::is_same_v<Leaf, Addr> || std::is_same_v<Leaf, Lam> ||
             std::is_same_v<Leaf, Opaque> || std::is_same_v<Leaf, Error>)
  Term rule(Heap&, Label, const Term& m, const Leaf&, int) {
    throw Abort{Outcome::stuck(shape(m))};  // values and errors are handled in eval
  }

  Term rule(Heap& mu, Label pc, const Term& m, const App& n, int d) {
    Term f = eval(mu, pc, n.fun, d);
    Term v = eval(mu, pc, n.arg, d);
    if (const auto* lam = as<Lam>(f)) {
      hit(cov_, Rule::big_app);
      Term w = eval_under(mu, pc, lam->label, subst(lam->body, lam->param, v), d);
      return stamp_value(w, lam->label);
    }
    if (const auto* w = as<CastE>(f); w != nullptr && std::holds_alternative<FunType>(w->cast.source.raw)) {
      hit(cov_, Rule::big_fun_cast);
      return eval(mu, pc, small::elim_fun_proxy(w->term, v, w->cast, pc), d);
    }
    throw Abort{Outcome::stuck(shape(m))};
  }

  Term rule(Heap& mu, Label pc, const Term& m, const If& n, int d) {
    Term c = eval(mu, pc, n.cond, d);
    if (const auto* k = as<Constant>(c); k != nullptr && k->value != Const::unit) {
      const bool t = k->value == Const::tt;
      hit(cov_, t ? Rule::big_if_true : Rule::big_if_false);
      Term v = eval_under(mu, pc, k->label, t ? n.then_branch : n.else_branch, d);
      return stamp_value(v, k->label);
    }
    if (const auto* w = as<CastE>(c)) {
      const auto* k = as<Constant>(w->term);
      if (k != nullptr && k->value != Const::unit) {
        const bool t = k->value == Const::tt;
        hit(cov_, t ? Rule::big_if_cast_true : Rule::big_if_cast_false);
        Term v = eval_under(mu, pc, k->label, t ? n.then_branch : n.else_branch, d);
        return eval(mu, pc, cast(stamp_value(v, k->label), small::branch_c(n.type, w->cast)), d);
      }
    }
    throw Abort{Outcome::stuck(shape(m))};
  }

  Term rule(Heap& mu, Label pc, const Term&, const Let& n, int d) {
    Term v = eval(mu, pc, n.bound, d);
    hit(cov_, Rule::big_let);
    return eval(mu, pc, subst(n.body, n.name, v), d);
  }

  Term rule(Heap& mu, Label pc, const Term&, const Ref& n, int d) {
    if (n.mode == WriteMode::nsu) {
      if (!leq(pc, n.label)) throw Abort{Outcome::of_error(nsu_error())};
      hit(cov_, Rule::big_ref_nsu);
    } else {
      hit(cov_, Rule::big_ref);
    }
    Term v = eval(mu, pc, n.init, d);
    const Address a = fresh(mu, n.label);
    mu = extend(std::move(mu), a, v);
    result.allocations.push_back(Allocation{a, n.cell});
    return addr(a, Label::low);
  }

  Term rule(Heap& mu, Label pc, const Term& m, const Deref& n, int d) {
    Term r = eval(mu, pc, n.ref, d);
    if (const auto* a = as<Addr>(r)) {
      auto v = lookup(mu, a->addr);
      if (!v) throw Abort{Outcome::stuck("dangling address " + to_string(a->addr))};
      hit(cov_, Rule::big_deref);
      return stamp_value(*v, join(a->addr.half, a->label));
    }
    if (const auto* w = as<CastE>(r); w != nullptr && std::holds_alternative<RefType>(w->cast.source.raw)) {
      hit(cov_, Rule::big_deref_cast);
      return eval(mu, pc, cast(deref(w->term), small::out_c(w->cast)), d);
    }
    throw Abort{Outcome::stuck(shape(m))};
  }

  Term rule(Heap& mu, Label pc, const Term& m, const Assign& n, int d) {
    Term r = eval(mu, pc, n.ref, d);
    const auto* a = as<Addr>(r);
    const auto* w = as<CastE>(r);
    if (w != nullptr && !std::holds_alternative<RefType>(w->cast.source.raw)) w = nullptr;
    if (a == nullptr && w == nullptr) throw Abort{Outcome::stuck(shape(m))};
    if (n.mode == WriteMode::nsu) {
      if (w != nullptr) {
        hit(cov_, Rule::big_assign_nsu_cast);
        return eval(mu, pc, small::elim_ref_proxy(w->term, n.value, w->cast, WriteMode::nsu), d);
      }
      if (!leq(pc, a->addr.half)) throw Abort{Outcome::of_error(nsu_error())};
      hit(cov_, Rule::big_assign_nsu);
    }
    Term v = eval(mu, pc, n.value, d);
    if (w != nullptr) {
      hit(cov_, Rule::big_assign_cast);
      return eval(mu, pc, small::elim_ref_proxy(w->term, v, w->cast, WriteMode::checked), d);
    }
    if (n.mode != WriteMode::nsu) hit(cov_, Rule::big_assign);
    mu = extend(std::move(mu), a->addr, v);
    return unit(Label::low);
  }

  Term rule(Heap& mu, Label pc, const Term&, const CastE& n, int d) {
    Term v = eval(mu, pc, n.term, d);
    if (is_inert(n.cast)) return cast(v, n.cast);
    hit(cov_, Rule::big_cast);
    return eval(mu, pc, small::apply_cast(v, n.cast, cov_), d);
  }

  Term rule(Heap& mu, Label pc, const Term&, const CastPC& n, int d) { return eval(mu, pc, n.term, d); }

  Term rule(Heap& mu, Label pc, const Term&, const Prot& n, int d) {
    return stamp_value(eval_under(mu, pc, n.label, n.term, d), n.label);
  }

  const Options& opts_;
  Coverage* cov_;
};

}  // namespace

Result eval_big(const Heap& mu, Label pc, const Term& m, const Options& opts, Coverage* cov) {
  Evaluator ev(opts, cov);
  Heap heap = mu;
  try {
    Term v = ev.eval(heap, pc, m, 0);
    ev.result.outcome = Outcome::of_value(std::move(v), std::move(heap));
  } catch (const Abort& a) {
    ev.result.outcome = a.outcome;
  }
  return std::move(ev.result);
}

}  // namespace lamsec::big
