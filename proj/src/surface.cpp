#include <sstream>

#include "lamsec/lattice.hpp"
#include "lamsec/surface.hpp"

namespace lamsec {

std::string_view to_string(Const k) {
  switch (k) {
    case Const::unit:
      return "unit";
    case Const::tt:
      return "true";
    case Const::ff:
      return "false";
  }
  return "?";
}

namespace surface {

Term make(NodeKind kind, SourcePos pos) {
  return std::make_shared<const Node>(Node{std::move(kind), pos});
}

namespace {

struct EqualVisitor {
  const NodeKind& other;

  bool operator()(const Var& a) const { return a.name == std::get<Var>(other).name; }
  bool operator()(const Constant& a) const {
    const auto& b = std::get<Constant>(other);
    return a.value == b.value && a.label == b.label;
  }
  bool operator()(const Lam& a) const {
    const auto& b = std::get<Lam>(other);
    return a.pc == b.pc && a.param == b.param && a.param_type == b.param_type &&
           a.label == b.label && equal(a.body, b.body);
  }
  bool operator()(const App& a) const {
    const auto& b = std::get<App>(other);
    return a.blame == b.blame && equal(a.fun, b.fun) && equal(a.arg, b.arg);
  }
  bool operator()(const If& a) const {
    const auto& b = std::get<If>(other);
    return a.blame == b.blame && equal(a.cond, b.cond) && equal(a.then_branch, b.then_branch) &&
           equal(a.else_branch, b.else_branch);
  }
  bool operator()(const Let& a) const {
    const auto& b = std::get<Let>(other);
    return a.name == b.name && equal(a.bound, b.bound) && equal(a.body, b.body);
  }
  bool operator()(const Ref& a) const {
    const auto& b = std::get<Ref>(other);
    return a.label == b.label && a.blame == b.blame && equal(a.init, b.init);
  }
  bool operator()(const Deref& a) const { return equal(a.ref, std::get<Deref>(other).ref); }
  bool operator()(const Assign& a) const {
    const auto& b = std::get<Assign>(other);
    return a.blame == b.blame && equal(a.ref, b.ref) && equal(a.value, b.value);
  }
  bool operator()(const Ann& a) const {
    const auto& b = std::get<Ann>(other);
    return a.blame == b.blame && a.type == b.type && equal(a.term, b.term);
  }
};

std::string describe(const std::string& detail, SourcePos pos) {
  std::ostringstream os;
  os << pos.line << ":" << pos.column << ": " << detail;
  return os.str();
}

}  // namespace

bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->kind.index() != b->kind.index()) return false;
  return std::visit(EqualVisitor{b->kind}, a->kind);
}

TypeError::TypeError(std::string rule, std::string premise, SourcePos pos,
                     const std::string& detail)
    : std::runtime_error(describe(rule + ": " + premise + " (" + detail + ")", pos)),
      rule_(std::move(rule)),
      premise_(std::move(premise)),
      pos_(pos) {}

bool Typed::operator==(const Typed& other) const {
  return equal(term, other.term) && gc == other.gc && type == other.type &&
         children == other.children;
}

}  // namespace surface
}  // namespace lamsec
