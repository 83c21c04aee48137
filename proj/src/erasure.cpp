#include "lamsec/erasure.hpp"

namespace lamsec::erasure {

using namespace cc;

Term erase(const Term& m) {
  return std::visit(
      [&](const auto& n) -> Term {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) {
          return m;
        } else if constexpr (std::is_same_v<N, Constant>) {
          return n.label == Label::low ? m : opaque();
        } else if constexpr (std::is_same_v<N, Addr>) {
          const bool visible = n.addr.half == Label::low && n.label == Label::low;
          return visible ? m : opaque();
        } else if constexpr (std::is_same_v<N, Lam>) {
          if (n.label == Label::high) return opaque();
          return lam(n.pc, n.param, n.param_type, erase(n.body), n.label);
        } else if constexpr (std::is_same_v<N, App>) {
          return app(erase(n.fun), erase(n.arg));
        } else if constexpr (std::is_same_v<N, If>) {
          return if_(erase(n.cond), n.type, erase(n.then_branch), erase(n.else_branch));
        } else if constexpr (std::is_same_v<N, Let>) {
          return let(n.name, erase(n.bound), erase(n.body));
        } else if constexpr (std::is_same_v<N, Ref>) {
          return ref(n.mode, n.label, n.cell, erase(n.init));
        } else if constexpr (std::is_same_v<N, Deref>) {
          return deref(erase(n.ref));
        } else if constexpr (std::is_same_v<N, Assign>) {
          return assign(n.mode, erase(n.ref), erase(n.value));
        } else if constexpr (std::is_same_v<N, CastE> || std::is_same_v<N, CastPC>) {
          return erase(n.term);
        } else {
          return opaque();  // Prot, Error, Opaque
        }
      },
      m->kind);
}

HalfHeap erase(const HalfHeap& h) {
  HalfHeap out;
  out.reserve(h.size());
  for (const auto& [i, v] : h) out.emplace_back(i, erase(v));
  return out;
}

HalfHeap erase(const Heap& mu) { return erase(mu.low); }

namespace {

inline constexpr int kMaxDepth = 3000;

struct Abort {
  Outcome outcome;
};

bool is_low_const(const Term& v, Const k) {
  const auto* c = as<Constant>(v);
  return c != nullptr && c->value == k && c->label == Label::low;
}

bool is_low_lam(const Term& v) {
  const auto* f = as<Lam>(v);
  return f != nullptr && f->label == Label::low;
}

bool is_low_addr(const Term& v) {
  const auto* a = as<Addr>(v);
  return a != nullptr && a->label == Label::low && a->addr.half == Label::low;
}

bool is_opaque(const Term& v) { return as<Opaque>(v) != nullptr; }

class Evaluator {
 public:
  Evaluator(long fuel, Coverage* cov) : fuel_(fuel), cov_(cov) {}

  Term eval(HalfHeap& mu, Label pc, const Term& m, int depth) {
    if (++result.steps > fuel_) {
      throw Abort{Outcome::timeout("out of fuel after " + std::to_string(fuel_) + " judgements")};
    }
    if (depth > kMaxDepth) throw Abort{Outcome::timeout("evaluation nested too deeply")};
    if (is_value(m)) {
      hit(cov_, Rule::erased_val);
      return m;
    }
    return std::visit([&](const auto& n) { return rule(mu, pc, m, n, depth + 1); }, m->kind);
  }

  Result result;

 private:
  /// Picks the unique rule among the candidates whose conditions hold.
  Rule choose(const Term& m, std::initializer_list<std::pair<bool, Rule>> candidates) {
    int n = 0;
    Rule picked{};
    for (const auto& [ok, r] : candidates) {
      if (!ok) continue;
      if (n++ == 0) picked = r;
    }
    if (n == 0) throw Abort{Outcome::stuck("no erased rule applies to " + to_string(m))};
    if (n > 1) ++result.ambiguous;
    hit(cov_, picked);
    return picked;
  }

  template <class N>
  Term rule(HalfHeap&, Label, const Term& m, const N&, int) {
    throw Abort{Outcome::stuck("no erased rule applies to " + to_string(m))};
  }

  Term rule(HalfHeap& mu, Label pc, const Term& m, const App& n, int d) {
    Term f = eval(mu, pc, n.fun, d);
    const Rule r = choose(m, {{is_low_lam(f), Rule::erased_app}, {is_opaque(f), Rule::erased_app_opaque}});
    Term v = eval(mu, pc, n.arg, d);
    if (r == Rule::erased_app_opaque) return opaque();
    const auto& lam = std::get<Lam>(f->kind);
    return eval(mu, pc, subst(lam.body, lam.param, v), d);
  }

  Term rule(HalfHeap& mu, Label pc, const Term& m, const If& n, int d) {
    Term c = eval(mu, pc, n.cond, d);
    const Rule r = choose(m, {{is_low_const(c, Const::tt), Rule::erased_if_true},
                              {is_low_const(c, Const::ff), Rule::erased_if_false},
                              {is_opaque(c), Rule::erased_if_opaque}});
    if (r == Rule::erased_if_opaque) return opaque();
    return eval(mu, pc, r == Rule::erased_if_true ? n.then_branch : n.else_branch, d);
  }

  Term rule(HalfHeap& mu, Label pc, const Term& m, const Let& n, int d) {
    Term v = eval(mu, pc, n.bound, d);
    choose(m, {{true, Rule::erased_let}});
    return eval(mu, pc, subst(n.body, n.name, v), d);
  }

  Term rule(HalfHeap& mu, Label pc, const Term& m, const Deref& n, int d) {
    Term r = eval(mu, pc, n.ref, d);
    const Rule picked =
        choose(m, {{is_low_addr(r), Rule::erased_deref}, {is_opaque(r), Rule::erased_deref_opaque}});
    if (picked == Rule::erased_deref_opaque) return opaque();
    auto v = lookup(mu, std::get<Addr>(r->kind).addr.index);
    if (!v) throw Abort{Outcome::stuck("dangling address in " + to_string(m))};
    return *v;
  }

  Term rule(HalfHeap& mu, Label pc, const Term& m, const Ref& n, int d) {
    Term v = eval(mu, pc, n.init, d);
    const bool nsu = n.mode == WriteMode::nsu;
    const bool low = n.label == Label::low;
    const Rule r = choose(m, {{nsu && low && leq(pc, Label::low), Rule::erased_ref_nsu},
                              {nsu && !low, Rule::erased_ref_nsu_opaque},
                              {!nsu && low, Rule::erased_ref},
                              {!nsu && !low, Rule::erased_ref_opaque}});
    if (r == Rule::erased_ref_nsu_opaque || r == Rule::erased_ref_opaque) return opaque();
    const int index = static_cast<int>(mu.size());
    mu.insert(mu.begin(), {index, v});
    return addr(Address{index, Label::low}, Label::low);
  }

  Term rule(HalfHeap& mu, Label pc, const Term& m, const Assign& n, int d) {
    Term l = eval(mu, pc, n.ref, d);
    Term v = eval(mu, pc, n.value, d);
    const bool nsu = n.mode == WriteMode::nsu;
    const Rule r = choose(m, {{nsu && is_low_addr(l) && leq(pc, Label::low), Rule::erased_assign_nsu},
                              {nsu && is_opaque(l), Rule::erased_assign_nsu_opaque},
                              {!nsu && is_low_addr(l), Rule::erased_assign},
                              {!nsu && is_opaque(l), Rule::erased_assign_opaque}});
    if (r == Rule::erased_assign_nsu || r == Rule::erased_assign) {
      mu.insert(mu.begin(), {std::get<Addr>(l->kind).addr.index, v});
    }
    return unit(Label::low);
  }

  long fuel_;
  Coverage* cov_;
};

}  // namespace

Result eval_erased(const HalfHeap& mu, Label pc, const Term& m, long fuel, Coverage* cov) {
  Evaluator ev(fuel, cov);
  HalfHeap heap = mu;
  try {
    Term v = ev.eval(heap, pc, m, 0);
    ev.result.outcome = Outcome::of_value(std::move(v), Heap{std::move(heap), {}});
  } catch (const Abort& a) {
    ev.result.outcome = a.outcome;
  }
  return std::move(ev.result);
}

}  // namespace lamsec::erasure
