#include "lamsec/compile.hpp"

#include "lamsec/lattice.hpp"

namespace lamsec {

namespace {

using surface::Typed;

class Compiler {
 public:
  cc::Term run(const Typed& d) {
    return std::visit([&](const auto& n) { return go(d, n); }, d.term->kind);
  }

 private:
  const Typed& child(const Typed& d, std::size_t i) { return d.children.at(i); }

  cc::Term go(const Typed&, const surface::Var& n) { return cc::var(n.name); }
  cc::Term go(const Typed&, const surface::Constant& n) { return cc::constant(n.value, n.label); }

  cc::Term go(const Typed& d, const surface::Lam& n) {
    return cc::lam(n.pc, n.param, n.param_type, run(child(d, 0)), n.label);
  }

  cc::Term go(const Typed& d, const surface::App& n) {
    const Typed& l = child(d, 0);
    const Typed& m = child(d, 1);
    const auto& ft = std::get<FunType>(l.type.raw);
    const GLabel g = l.type.label;
    const GLabel gc = d.gc;
    // Contravariant position: the PC annotation is recast with the dual merge.
    const GLabel g1 = merge_dual(gc, ft.pc);
    const GLabel g2 = merge_dual(g, ft.pc);
    cc::Cast c1{l.type, fun_t(*ft.dom, cons_join(g1, g2), *ft.cod, g), n.blame};
    cc::Cast c2{m.type, merge(m.type, *ft.dom), n.blame};
    return cc::app(cc::cast(run(l), std::move(c1)), cc::cast(run(m), std::move(c2)));
  }

  cc::Term go(const Typed& d, const surface::If& n) {
    const Typed& l = child(d, 0);
    const Typed& m = child(d, 1);
    const Typed& e = child(d, 2);
    const Type joined = *cons_join(m.type, e.type);
    cc::Cast c1{m.type, merge(m.type, joined), n.blame};
    cc::Cast c2{e.type, merge(e.type, joined), n.blame};
    return cc::if_(run(l), joined, cc::cast(run(m), std::move(c1)), cc::cast(run(e), std::move(c2)));
  }

  cc::Term go(const Typed& d, const surface::Let& n) {
    return cc::let(n.name, run(child(d, 0)), run(child(d, 1)));
  }

  cc::Term go(const Typed& d, const surface::Ref& n) {
    const Typed& m = child(d, 0);
    const Type target{m.type.raw, n.label};
    cc::Cast c{m.type, merge(m.type, target), n.blame};
    const auto mode = d.gc.is_concrete() ? cc::WriteMode::static_ : cc::WriteMode::nsu;
    return cc::ref(mode, n.label, m.type.raw, cc::cast(run(m), std::move(c)));
  }

  cc::Term go(const Typed& d, const surface::Deref&) { return cc::deref(run(child(d, 0))); }

  cc::Term go(const Typed& d, const surface::Assign& n) {
    const Typed& l = child(d, 0);
    const Typed& m = child(d, 1);
    const Type& cell = *std::get<RefType>(l.type.raw).inner;
    const GLabel g = l.type.label;
    cc::Cast c1{l.type, ref_t(cell, merge(g, cell.label)), n.blame};
    cc::Cast c2{m.type, merge(m.type, cell), n.blame};
    const bool is_static = d.gc.is_concrete() && cell.label.is_concrete();
    return cc::assign(is_static ? cc::WriteMode::static_ : cc::WriteMode::nsu,
                      cc::cast(run(l), std::move(c1)), cc::cast(run(m), std::move(c2)));
  }

  cc::Term go(const Typed& d, const surface::Ann& n) {
    const Typed& m = child(d, 0);
    cc::Cast c{m.type, merge(m.type, n.type), n.blame};
    return cc::cast(run(m), std::move(c));
  }
};

}  // namespace

cc::Term compile(const surface::Typed& typed) { return Compiler{}.run(typed); }

}  // namespace lamsec
