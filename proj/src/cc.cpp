#include "lamsec/cc.hpp"

#include <algorithm>

#include "lamsec/lattice.hpp"

namespace lamsec::cc {

std::string to_string(Address a) {
  return std::to_string(a.index) + "_" + std::string(lamsec::to_string(a.half));
}

std::string to_string(const Cast& c) {
  return to_string(c.source) + " =>^" + c.blame + " " + to_string(c.target);
}

std::string_view to_string(WriteMode m) {
  switch (m) {
    case WriteMode::static_:
      return "static";
    case WriteMode::nsu:
      return "nsu";
    case WriteMode::checked:
      return "checked";
  }
  return "?";
}

// ---- classification ----------------------------------------------------------

CastKind classify_cast(const Cast& c) {
  if (!consistent(c.source, c.target)) {
    throw LatticeError("cast endpoints are inconsistent: " + to_string(c));
  }
  const GLabel g1 = c.source.label;
  if (is_base(c.source.raw)) {
    if (g1 == c.target.label || g1.is_star()) return CastKind::active;
    return CastKind::inert;
  }
  if (g1.is_star()) return CastKind::active;
  if (const auto* f = std::get_if<FunType>(&c.source.raw)) {
    return f->pc.is_star() ? CastKind::active : CastKind::inert;
  }
  const auto& r = std::get<RefType>(c.source.raw);
  return r.inner->label.is_star() ? CastKind::active : CastKind::inert;
}

// ---- construction --------------------------------------------------------------

Term make(NodeKind kind) { return std::make_shared<const Node>(Node{std::move(kind)}); }
Term var(std::string name) { return make(Var{std::move(name)}); }
Term constant(Const k, Label l) { return make(Constant{k, l}); }
Term unit(Label l) { return constant(Const::unit, l); }
Term boolean(bool b, Label l) { return constant(b ? Const::tt : Const::ff, l); }
Term addr(Address a, Label l) { return make(Addr{a, l}); }
Term lam(Label pc, std::string param, Type param_type, Term body, Label l) {
  return make(Lam{pc, std::move(param), std::move(param_type), std::move(body), l});
}
Term app(Term fun, Term arg) { return make(App{std::move(fun), std::move(arg)}); }
Term if_(Term cond, Type type, Term then_branch, Term else_branch) {
  return make(If{std::move(cond), std::move(type), std::move(then_branch), std::move(else_branch)});
}
Term let(std::string name, Term bound, Term body) {
  return make(Let{std::move(name), std::move(bound), std::move(body)});
}
Term ref(WriteMode mode, Label l, RawType cell, Term init) {
  return make(Ref{mode, l, std::move(cell), std::move(init)});
}
Term deref(Term r) { return make(Deref{std::move(r)}); }
Term assign(WriteMode mode, Term r, Term value) {
  return make(Assign{mode, std::move(r), std::move(value)});
}
Term cast(Term term, Cast c) { return make(CastE{std::move(term), std::move(c)}); }
Term cast_pc(GLabel g, Term term) { return make(CastPC{g, std::move(term)}); }
Term prot(Label l, Term term) { return make(Prot{l, std::move(term)}); }
Term blame(std::string label) { return make(Error{ErrorKind::blame, std::move(label)}); }
Term nsu_error() { return make(Error{ErrorKind::nsu, ""}); }
Term opaque() { return make(Opaque{}); }

// ---- equality --------------------------------------------------------------------

namespace {

struct EqualVisitor {
  const NodeKind& other;

  bool operator()(const Var& a) const { return a.name == std::get<Var>(other).name; }
  bool operator()(const Constant& a) const {
    const auto& b = std::get<Constant>(other);
    return a.value == b.value && a.label == b.label;
  }
  bool operator()(const Addr& a) const {
    const auto& b = std::get<Addr>(other);
    return a.addr == b.addr && a.label == b.label;
  }
  bool operator()(const Lam& a) const {
    const auto& b = std::get<Lam>(other);
    return a.pc == b.pc && a.param == b.param && a.param_type == b.param_type &&
           a.label == b.label && equal(a.body, b.body);
  }
  bool operator()(const App& a) const {
    const auto& b = std::get<App>(other);
    return equal(a.fun, b.fun) && equal(a.arg, b.arg);
  }
  bool operator()(const If& a) const {
    const auto& b = std::get<If>(other);
    return a.type == b.type && equal(a.cond, b.cond) && equal(a.then_branch, b.then_branch) &&
           equal(a.else_branch, b.else_branch);
  }
  bool operator()(const Let& a) const {
    const auto& b = std::get<Let>(other);
    return a.name == b.name && equal(a.bound, b.bound) && equal(a.body, b.body);
  }
  bool operator()(const Ref& a) const {
    const auto& b = std::get<Ref>(other);
    return a.mode == b.mode && a.label == b.label && a.cell == b.cell && equal(a.init, b.init);
  }
  bool operator()(const Deref& a) const { return equal(a.ref, std::get<Deref>(other).ref); }
  bool operator()(const Assign& a) const {
    const auto& b = std::get<Assign>(other);
    return a.mode == b.mode && equal(a.ref, b.ref) && equal(a.value, b.value);
  }
  bool operator()(const CastE& a) const {
    const auto& b = std::get<CastE>(other);
    return a.cast == b.cast && equal(a.term, b.term);
  }
  bool operator()(const CastPC& a) const {
    const auto& b = std::get<CastPC>(other);
    return a.label == b.label && equal(a.term, b.term);
  }
  bool operator()(const Prot& a) const {
    const auto& b = std::get<Prot>(other);
    return a.label == b.label && equal(a.term, b.term);
  }
  bool operator()(const Error& a) const {
    const auto& b = std::get<Error>(other);
    return a.kind == b.kind && a.blame == b.blame;
  }
  bool operator()(const Opaque&) const { return true; }
};

}  // namespace

bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->kind.index() != b->kind.index()) return false;
  return std::visit(EqualVisitor{b->kind}, a->kind);
}

// ---- values ------------------------------------------------------------------------

bool is_value(const Term& t) {
  if (as<Constant>(t) || as<Addr>(t) || as<Lam>(t) || as<Opaque>(t)) return true;
  if (const auto* c = as<CastE>(t)) return is_inert(c->cast) && is_value(c->term);
  return false;
}

bool is_error(const Term& t) { return as<Error>(t) != nullptr; }

Term stamp_value(const Term& v, Label l) {
  if (const auto* k = as<Constant>(v)) return constant(k->value, join(k->label, l));
  if (const auto* a = as<Addr>(v)) return addr(a->addr, join(a->label, l));
  if (const auto* f = as<Lam>(v)) return lam(f->pc, f->param, f->param_type, f->body, join(f->label, l));
  if (as<Opaque>(v)) return v;
  if (const auto* c = as<CastE>(v)) {
    Cast stamped{stamp_type(c->cast.source, l), stamp_type(c->cast.target, l), c->cast.blame};
    return cast(stamp_value(c->term, l), std::move(stamped));
  }
  throw std::logic_error("stamp_value: not a value: " + to_string(v));
}

// ---- substitution --------------------------------------------------------------------

namespace {

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) {
          if (!bound.contains(n.name)) out.insert(n.name);
        } else if constexpr (std::is_same_v<N, Lam>) {
          const bool fresh = bound.insert(n.param).second;
          collect_free(n.body, bound, out);
          if (fresh) bound.erase(n.param);
        } else if constexpr (std::is_same_v<N, Let>) {
          collect_free(n.bound, bound, out);
          const bool fresh = bound.insert(n.name).second;
          collect_free(n.body, bound, out);
          if (fresh) bound.erase(n.name);
        } else if constexpr (std::is_same_v<N, App>) {
          collect_free(n.fun, bound, out);
          collect_free(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, If>) {
          collect_free(n.cond, bound, out);
          collect_free(n.then_branch, bound, out);
          collect_free(n.else_branch, bound, out);
        } else if constexpr (std::is_same_v<N, Ref>) {
          collect_free(n.init, bound, out);
        } else if constexpr (std::is_same_v<N, Deref>) {
          collect_free(n.ref, bound, out);
        } else if constexpr (std::is_same_v<N, Assign>) {
          collect_free(n.ref, bound, out);
          collect_free(n.value, bound, out);
        } else if constexpr (std::is_same_v<N, CastE> || std::is_same_v<N, CastPC> ||
                             std::is_same_v<N, Prot>) {
          collect_free(n.term, bound, out);
        }
      },
      t->kind);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = base + "'" + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

class Substituter {
 public:
  Substituter(std::string x, Term v) : x_(std::move(x)), v_(std::move(v)), fv_(free_vars(v_)) {}

  Term run(const Term& t) {
    return std::visit([&](const auto& n) { return go(t, n); }, t->kind);
  }

 private:
  Term go(const Term& t, const Var& n) { return n.name == x_ ? v_ : t; }
  Term go(const Term& t, const Constant&) { return t; }
  Term go(const Term& t, const Addr&) { return t; }
  Term go(const Term& t, const Error&) { return t; }
  Term go(const Term& t, const Opaque&) { return t; }

  // Renames `name` in `body` if it would capture a free variable of V.
  std::pair<std::string, Term> under_binder(const std::string& name, const Term& body) {
    if (!fv_.contains(name)) return {name, body};
    std::set<std::string> avoid = fv_;
    avoid.merge(free_vars(body));
    avoid.insert(x_);
    std::string renamed = fresh_name(name, avoid);
    return {renamed, subst(body, name, var(renamed))};
  }

  Term go(const Term& t, const Lam& n) {
    if (n.param == x_) return t;
    auto [param, body] = under_binder(n.param, n.body);
    return lam(n.pc, param, n.param_type, run(body), n.label);
  }
  Term go(const Term&, const Let& n) {
    Term bound = run(n.bound);
    if (n.name == x_) return let(n.name, bound, n.body);
    auto [name, body] = under_binder(n.name, n.body);
    return let(name, bound, run(body));
  }
  Term go(const Term&, const App& n) { return app(run(n.fun), run(n.arg)); }
  Term go(const Term&, const If& n) {
    return if_(run(n.cond), n.type, run(n.then_branch), run(n.else_branch));
  }
  Term go(const Term&, const Ref& n) { return ref(n.mode, n.label, n.cell, run(n.init)); }
  Term go(const Term&, const Deref& n) { return deref(run(n.ref)); }
  Term go(const Term&, const Assign& n) { return assign(n.mode, run(n.ref), run(n.value)); }
  Term go(const Term&, const CastE& n) { return cast(run(n.term), n.cast); }
  Term go(const Term&, const CastPC& n) { return cast_pc(n.label, run(n.term)); }
  Term go(const Term&, const Prot& n) { return prot(n.label, run(n.term)); }

  std::string x_;
  Term v_;
  std::set<std::string> fv_;
};

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(t, bound, out);
  return out;
}

Term subst(const Term& m, const std::string& x, const Term& v) {
  return Substituter(x, v).run(m);
}

// ---- printing ----------------------------------------------------------------------------

namespace {

std::string_view write_suffix(WriteMode m) {
  switch (m) {
    case WriteMode::static_:
      return "";
    case WriteMode::nsu:
      return "?";
    case WriteMode::checked:
      return "!";
  }
  return "";
}

struct Printer {
  std::string operator()(const Var& n) const { return n.name; }
  std::string operator()(const Constant& n) const {
    return std::string(lamsec::to_string(n.value)) + "_" + std::string(lamsec::to_string(n.label));
  }
  std::string operator()(const Addr& n) const {
    return "(addr " + to_string(n.addr) + ")_" + std::string(lamsec::to_string(n.label));
  }
  std::string operator()(const Lam& n) const {
    return "(lam[" + std::string(lamsec::to_string(n.pc)) + "] " + n.param + " : " +
           lamsec::to_string(n.param_type) + " . " + to_string(n.body) + ")_" +
           std::string(lamsec::to_string(n.label));
  }
  std::string operator()(const App& n) const {
    return "(" + to_string(n.fun) + " " + to_string(n.arg) + ")";
  }
  std::string operator()(const If& n) const {
    return "(if[" + lamsec::to_string(n.type) + "] " + to_string(n.cond) + " " +
           to_string(n.then_branch) + " " + to_string(n.else_branch) + ")";
  }
  std::string operator()(const Let& n) const {
    return "(let " + n.name + " = " + to_string(n.bound) + " in " + to_string(n.body) + ")";
  }
  std::string operator()(const Ref& n) const {
    return "(ref" + std::string(write_suffix(n.mode)) + " " +
           std::string(lamsec::to_string(n.label)) + " " + to_string(n.init) + ")";
  }
  std::string operator()(const Deref& n) const { return "(! " + to_string(n.ref) + ")"; }
  std::string operator()(const Assign& n) const {
    return "(" + to_string(n.ref) + " :=" + std::string(write_suffix(n.mode)) + " " +
           to_string(n.value) + ")";
  }
  std::string operator()(const CastE& n) const {
    return to_string(n.term) + "<" + to_string(n.cast) + ">";
  }
  std::string operator()(const CastPC& n) const {
    return "(cast_pc " + lamsec::to_string(n.label) + " " + to_string(n.term) + ")";
  }
  std::string operator()(const Prot& n) const {
    return "(prot " + std::string(lamsec::to_string(n.label)) + " " + to_string(n.term) + ")";
  }
  std::string operator()(const Error& n) const {
    return n.kind == ErrorKind::nsu ? "nsu-error" : "blame " + n.blame;
  }
  std::string operator()(const Opaque&) const { return "bullet"; }
};

}  // namespace

std::string to_string(const Term& t) { return std::visit(Printer{}, t->kind); }

// ---- heap context ------------------------------------------------------------------------

std::optional<Type> HeapContext::lookup(Address a) const {
  const auto& half = a.half == Label::low ? low : high;
  auto it = std::find_if(half.begin(), half.end(), [&](const auto& e) { return e.first == a.index; });
  if (it == half.end()) return std::nullopt;
  return Type{it->second, a.half};
}

void HeapContext::extend(Address a, RawType t) {
  auto& half = a.half == Label::low ? low : high;
  half.insert(half.begin(), {a.index, std::move(t)});
}

}  // namespace lamsec::cc
