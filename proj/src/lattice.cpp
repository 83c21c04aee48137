#include "lamsec/lattice.hpp"

#include <sstream>

namespace lamsec {

std::string_view to_string(Label l) { return l == Label::low ? "low" : "high"; }

std::string to_string(GLabel g) {
  return g.is_star() ? std::string("*") : std::string(to_string(g.concrete()));
}

Type unit_t(GLabel g) { return Type{UnitType{}, g}; }
Type bool_t(GLabel g) { return Type{BoolType{}, g}; }
Type ref_t(Type inner, GLabel g) { return Type{RefType{std::move(inner)}, g}; }
Type fun_t(Type dom, GLabel pc, Type cod, GLabel g) {
  return Type{FunType{std::move(dom), pc, std::move(cod)}, g};
}

std::string to_string(const RawType& t) {
  if (std::holds_alternative<UnitType>(t)) return "Unit";
  if (std::holds_alternative<BoolType>(t)) return "Bool";
  if (const auto* r = std::get_if<RefType>(&t)) return "Ref " + to_string(*r->inner);
  const auto& f = std::get<FunType>(t);
  return to_string(*f.dom) + " ->[" + to_string(f.pc) + "] " + to_string(*f.cod);
}

std::string to_string(const Type& t) {
  if (is_base(t.raw)) return to_string(t.raw) + "_" + to_string(t.label);
  return "(" + to_string(t.raw) + ")_" + to_string(t.label);
}

namespace {

// Applies `on_ref(a, b)` / `on_fun(a, b)` when both raw types have the same
// constructor; base types compare by constructor equality.
template <class Result, class OnRef, class OnFun>
Result zip_raw(const RawType& a, const RawType& b, Result mismatch, Result base_equal,
               OnRef on_ref, OnFun on_fun) {
  if (a.index() != b.index()) return mismatch;
  if (is_base(a)) return base_equal;
  if (const auto* ra = std::get_if<RefType>(&a)) return on_ref(*ra, std::get<RefType>(b));
  return on_fun(std::get<FunType>(a), std::get<FunType>(b));
}

[[noreturn]] void precondition_failed(const char* op, const std::string& a, const std::string& b) {
  std::ostringstream os;
  os << op << ": requires " << a << " ≲ " << b;
  throw LatticeError(os.str());
}

}  // namespace

// ---- subtyping -----------------------------------------------------------

bool subtype(GLabel a, GLabel b) {
  if (a.is_star() || b.is_star()) return a.is_star() && b.is_star();
  return leq(a.concrete(), b.concrete());
}

bool subtype(const RawType& a, const RawType& b) {
  return zip_raw(
      a, b, false, true,
      [](const RefType& x, const RefType& y) {
        return subtype(*x.inner, *y.inner) && subtype(*y.inner, *x.inner);
      },
      [](const FunType& x, const FunType& y) {
        return subtype(y.pc, x.pc) && subtype(*y.dom, *x.dom) && subtype(*x.cod, *y.cod);
      });
}

bool subtype(const Type& a, const Type& b) {
  return subtype(a.label, b.label) && subtype(a.raw, b.raw);
}

// ---- consistency ---------------------------------------------------------

bool consistent(GLabel a, GLabel b) { return a.is_star() || b.is_star() || a == b; }

bool consistent(const RawType& a, const RawType& b) {
  return zip_raw(
      a, b, false, true,
      [](const RefType& x, const RefType& y) { return consistent(*x.inner, *y.inner); },
      [](const FunType& x, const FunType& y) {
        return consistent(x.pc, y.pc) && consistent(*x.dom, *y.dom) &&
               consistent(*x.cod, *y.cod);
      });
}

bool consistent(const Type& a, const Type& b) {
  return consistent(a.label, b.label) && consistent(a.raw, b.raw);
}

// ---- consistent subtyping ------------------------------------------------

bool cons_subtype(GLabel a, GLabel b) {
  if (a.is_star() || b.is_star()) return true;
  return leq(a.concrete(), b.concrete());
}

bool cons_subtype(const RawType& a, const RawType& b) {
  return zip_raw(
      a, b, false, true,
      [](const RefType& x, const RefType& y) {
        return cons_subtype(*x.inner, *y.inner) && cons_subtype(*y.inner, *x.inner);
      },
      [](const FunType& x, const FunType& y) {
        return cons_subtype(y.pc, x.pc) && cons_subtype(*y.dom, *x.dom) &&
               cons_subtype(*x.cod, *y.cod);
      });
}

bool cons_subtype(const Type& a, const Type& b) {
  return cons_subtype(a.label, b.label) && cons_subtype(a.raw, b.raw);
}

// ---- gradual meet --------------------------------------------------------

std::optional<GLabel> gradual_meet(GLabel a, GLabel b) {
  if (a.is_star()) return b;
  if (b.is_star()) return a;
  if (a == b) return a;
  return std::nullopt;
}

std::optional<RawType> gradual_meet(const RawType& a, const RawType& b) {
  return zip_raw<std::optional<RawType>>(
      a, b, std::nullopt, a,
      [](const RefType& x, const RefType& y) -> std::optional<RawType> {
        auto inner = gradual_meet(*x.inner, *y.inner);
        if (!inner) return std::nullopt;
        return RefType{*inner};
      },
      [](const FunType& x, const FunType& y) -> std::optional<RawType> {
        auto pc = gradual_meet(x.pc, y.pc);
        auto dom = gradual_meet(*x.dom, *y.dom);
        auto cod = gradual_meet(*x.cod, *y.cod);
        if (!pc || !dom || !cod) return std::nullopt;
        return FunType{*dom, *pc, *cod};
      });
}

std::optional<Type> gradual_meet(const Type& a, const Type& b) {
  auto raw = gradual_meet(a.raw, b.raw);
  auto label = gradual_meet(a.label, b.label);
  if (!raw || !label) return std::nullopt;
  return Type{*raw, *label};
}

// ---- consistent join / meet ------------------------------------------------

GLabel cons_join(GLabel a, GLabel b) {
  if (a.is_star() || b.is_star()) return kStar;
  return join(a.concrete(), b.concrete());
}

GLabel cons_meet(GLabel a, GLabel b) {
  if (a.is_star() || b.is_star()) return kStar;
  return meet(a.concrete(), b.concrete());
}

std::optional<RawType> cons_join(const RawType& a, const RawType& b) {
  return zip_raw<std::optional<RawType>>(
      a, b, std::nullopt, a,
      [](const RefType& x, const RefType& y) -> std::optional<RawType> {
        auto inner = gradual_meet(*x.inner, *y.inner);
        if (!inner) return std::nullopt;
        return RefType{*inner};
      },
      [](const FunType& x, const FunType& y) -> std::optional<RawType> {
        auto dom = cons_meet(*x.dom, *y.dom);
        auto cod = cons_join(*x.cod, *y.cod);
        if (!dom || !cod) return std::nullopt;
        return FunType{*dom, cons_meet(x.pc, y.pc), *cod};
      });
}

std::optional<Type> cons_join(const Type& a, const Type& b) {
  auto raw = cons_join(a.raw, b.raw);
  if (!raw) return std::nullopt;
  return Type{*raw, cons_join(a.label, b.label)};
}

std::optional<RawType> cons_meet(const RawType& a, const RawType& b) {
  return zip_raw<std::optional<RawType>>(
      a, b, std::nullopt, a,
      [](const RefType& x, const RefType& y) -> std::optional<RawType> {
        auto inner = gradual_meet(*x.inner, *y.inner);
        if (!inner) return std::nullopt;
        return RefType{*inner};
      },
      [](const FunType& x, const FunType& y) -> std::optional<RawType> {
        auto dom = cons_join(*x.dom, *y.dom);
        auto cod = cons_meet(*x.cod, *y.cod);
        if (!dom || !cod) return std::nullopt;
        return FunType{*dom, cons_join(x.pc, y.pc), *cod};
      });
}

std::optional<Type> cons_meet(const Type& a, const Type& b) {
  auto raw = cons_meet(a.raw, b.raw);
  if (!raw) return std::nullopt;
  return Type{*raw, cons_meet(a.label, b.label)};
}

// ---- merge -----------------------------------------------------------------

GLabel merge(GLabel a, GLabel b) {
  if (!cons_subtype(a, b)) precondition_failed("merge", to_string(a), to_string(b));
  if (b.is_star()) return kStar;
  if (a.is_star()) return b;
  return a;
}

GLabel merge_dual(GLabel a, GLabel b) {
  if (!cons_subtype(a, b)) precondition_failed("merge_dual", to_string(a), to_string(b));
  if (a.is_star()) return kStar;
  if (b.is_star()) return a;
  return b;
}

RawType merge(const RawType& a, const RawType& b) {
  if (!cons_subtype(a, b)) precondition_failed("merge", to_string(a), to_string(b));
  if (is_base(a)) return a;
  if (std::holds_alternative<RefType>(a)) return b;
  const auto& x = std::get<FunType>(a);
  const auto& y = std::get<FunType>(b);
  return FunType{merge_dual(*y.dom, *x.dom), merge_dual(y.pc, x.pc), merge(*x.cod, *y.cod)};
}

RawType merge_dual(const RawType& a, const RawType& b) {
  if (!cons_subtype(a, b)) precondition_failed("merge_dual", to_string(a), to_string(b));
  if (is_base(a)) return a;
  if (std::holds_alternative<RefType>(a)) return a;
  const auto& x = std::get<FunType>(a);
  const auto& y = std::get<FunType>(b);
  return FunType{merge(*y.dom, *x.dom), merge(y.pc, x.pc), merge_dual(*x.cod, *y.cod)};
}

Type merge(const Type& a, const Type& b) {
  return Type{merge(a.raw, b.raw), merge(a.label, b.label)};
}

Type merge_dual(const Type& a, const Type& b) {
  return Type{merge_dual(a.raw, b.raw), merge_dual(a.label, b.label)};
}

Type stamp_type(const Type& a, GLabel g) { return Type{a.raw, cons_join(a.label, g)}; }

}  // namespace lamsec
